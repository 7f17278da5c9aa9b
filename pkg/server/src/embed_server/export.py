"""Cache export: embed a texts file into the JSONL cache format.

The output is bit-compatible with the cache files the survey-insights
package loads: a header line with dimension and model id, then one
{"text", "vector"} object per line.
"""

from __future__ import annotations

import json
from pathlib import Path

from .encoder import DEFAULT_MODEL_ID, REQUIRED_DIMENSION, encode_texts, load_encoder

EXPORT_BATCH = 64


def read_texts(path) -> list[str]:
    """Unique nonblank lines of the input file, original order preserved."""
    raw = Path(path).read_text(encoding="utf-8")
    seen = set()
    texts = []
    for line in raw.splitlines():
        text = line.strip()
        if text and text not in seen:
            seen.add(text)
            texts.append(text)
    return texts


def export_cache(texts_path, output_path, model_id: str = DEFAULT_MODEL_ID, model=None) -> int:
    """Embed every line of texts_path and write a cache file. Returns entry count."""
    texts = read_texts(texts_path)
    if not texts:
        raise ValueError(f"{texts_path}: no texts to embed")
    if model is None:
        model = load_encoder(model_id)
    output_path = Path(output_path)
    with output_path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"dimension": REQUIRED_DIMENSION, "model_id": model_id}) + "\n")
        for start in range(0, len(texts), EXPORT_BATCH):
            batch = texts[start : start + EXPORT_BATCH]
            for text, vector in zip(batch, encode_texts(model, batch)):
                fh.write(json.dumps({"text": text, "vector": vector}) + "\n")
    return len(texts)
