import json
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


def pytest_runtest_logreport(report):
    # One visible line per acceptance criterion, independent of -v/-q.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {outcome}: {name}")


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fixture_responses() -> list[str]:
    return (DATA_DIR / "responses.txt").read_text(encoding="utf-8").splitlines()


@pytest.fixture(scope="session")
def fixture_titles() -> list[str]:
    return (DATA_DIR / "titles.txt").read_text(encoding="utf-8").splitlines()


@pytest.fixture(scope="session")
def reference_partition() -> dict:
    return json.loads((DATA_DIR / "reference_partition.json").read_text(encoding="utf-8"))
