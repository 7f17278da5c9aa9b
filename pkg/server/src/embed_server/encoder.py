"""Sentence-encoder loading and batch encoding.

The pinned default checkpoint embeds sentences into a 384-dimensional
space; its published silhouette/clustering behavior on the bundled fixture
corpus is what the acceptance suite checks, so changing the default model
invalidates those tolerances.
"""

from __future__ import annotations

import numpy as np

DEFAULT_MODEL_ID = "sentence-transformers/paraphrase-MiniLM-L3-v2"
REQUIRED_DIMENSION = 384


def load_encoder(model_id: str = DEFAULT_MODEL_ID):
    """Load the sentence encoder, preferring the local model cache.

    Refuses models whose output dimension is not 384: every consumer of the
    wire protocol and the cache format assumes that width.
    """
    from sentence_transformers import SentenceTransformer

    try:
        model = SentenceTransformer(model_id, local_files_only=True)
    except Exception:
        model = SentenceTransformer(model_id)
    get_dim = getattr(model, "get_embedding_dimension", None)
    dimension = get_dim() if get_dim else model.get_sentence_embedding_dimension()
    if dimension != REQUIRED_DIMENSION:
        raise RuntimeError(
            f"model {model_id!r} embeds into {dimension} dimensions, "
            f"need {REQUIRED_DIMENSION}"
        )
    return model


def encode_texts(model, texts: list[str]) -> list[list[float]]:
    """Encode texts in order, as full-precision Python floats.

    Going through float64 keeps the JSON serialization (shortest
    round-trip decimal) bit-compatible between the wire protocol and
    exported cache files.
    """
    vectors = np.asarray(model.encode(texts, convert_to_numpy=True), dtype=np.float64)
    return [[float(x) for x in row] for row in vectors]
