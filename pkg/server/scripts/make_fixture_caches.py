"""Regenerate the committed fixture caches under ../tests/data/.

Dev tooling, not part of either package's runtime. Run from anywhere:

    python server/scripts/make_fixture_caches.py

Produces:
    tests/data/fixture_responses.cache.jsonl   28 fixture responses
    tests/data/fixture_full.cache.jsonl        responses + titles + every
                                               token either preprocessing
                                               mode can request
"""

import sys
import tempfile
from pathlib import Path

from embed_server import DEFAULT_MODEL_ID, export_cache, load_encoder
from survey_insights import preprocess_tokens

DATA_DIR = Path(__file__).resolve().parents[2] / "tests" / "data"


def main() -> int:
    responses = (DATA_DIR / "responses.txt").read_text(encoding="utf-8").splitlines()
    titles = (DATA_DIR / "titles.txt").read_text(encoding="utf-8").splitlines()

    tokens: list[str] = []
    seen: set[str] = set()
    for light_stemming in (False, True):
        for response in responses:
            for token in preprocess_tokens([response], light_stemming=light_stemming).tokens:
                if token not in seen:
                    seen.add(token)
                    tokens.append(token)

    model = load_encoder(DEFAULT_MODEL_ID)

    count = export_cache(DATA_DIR / "responses.txt",
                         DATA_DIR / "fixture_responses.cache.jsonl", model=model)
    print(f"fixture_responses.cache.jsonl: {count} entries")

    with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
        fh.write("\n".join(responses + titles + tokens) + "\n")
        union_path = fh.name
    count = export_cache(union_path, DATA_DIR / "fixture_full.cache.jsonl", model=model)
    print(f"fixture_full.cache.jsonl: {count} entries "
          f"({len(responses)} responses, {len(titles)} titles, {len(tokens)} tokens)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
