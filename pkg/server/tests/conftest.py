from pathlib import Path

import pytest

FIXTURE_DIR = Path(__file__).resolve().parents[2] / "tests" / "data"


def _encoder_or_none():
    try:
        from embed_server import load_encoder

        return load_encoder()
    except Exception as exc:  # model neither cached nor downloadable here
        print(f"encoder unavailable: {exc}")
        return None


_ENCODER = None
_PROBED = False


@pytest.fixture(scope="session")
def encoder():
    global _ENCODER, _PROBED
    if not _PROBED:
        _ENCODER = _encoder_or_none()
        _PROBED = True
    if _ENCODER is None:
        pytest.skip("sentence encoder unavailable (no local cache, no model mirror)")
    return _ENCODER


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR
