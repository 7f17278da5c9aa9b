"""Embedding vectors, similarity operations, and pluggable text-embedding providers.

An embedding vector is a plain 1-D ``numpy.ndarray`` of float64. Three
providers share one interface: a deterministic hash embedder (offline test
stand-in), a precomputed-vector cache, and an HTTP client for a real encoder
service.
"""

from __future__ import annotations

import hashlib
import json
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import requests

from .errors import (
    CacheMiss,
    DimensionMismatch,
    EmptyInput,
    MalformedCacheFile,
    ServiceUnavailable,
    ZeroVector,
)

EmbeddingVector = np.ndarray

DEFAULT_DIMENSION = 384

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def word_tokens(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric characters. Keeps duplicates."""
    return _WORD_RE.findall(text.lower())


def as_vector(values) -> EmbeddingVector:
    """Coerce to a float64 1-D array, rejecting non-finite entries."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ZeroVector("vector contains non-finite entries")
    return v


def cosine_similarity(u: EmbeddingVector, v: EmbeddingVector) -> float:
    """Cosine of the angle between u and v, clamped to [-1, 1].

    Symmetric in its arguments and invariant under positive scaling of
    either one.
    """
    u = as_vector(u)
    v = as_vector(v)
    if u.shape[0] != v.shape[0]:
        raise DimensionMismatch(f"vector lengths differ: {u.shape[0]} vs {v.shape[0]}")
    nu = float(np.sqrt(np.einsum("i,i->", u, u)))
    nv = float(np.sqrt(np.einsum("i,i->", v, v)))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine similarity is undefined for zero-norm vectors")
    sim = float(np.einsum("i,i->", u, v)) / (nu * nv)
    return max(-1.0, min(1.0, sim))


def mean_embedding(vectors: Sequence[EmbeddingVector]) -> EmbeddingVector:
    """Elementwise arithmetic mean of a nonempty list of same-length vectors."""
    if len(vectors) == 0:
        raise EmptyInput("mean_embedding needs at least one vector")
    stacked = stack_vectors(vectors)
    return stacked.mean(axis=0)


def stack_vectors(vectors: Sequence[EmbeddingVector]) -> np.ndarray:
    """Stack same-dimension vectors into an (n, d) matrix."""
    if len(vectors) == 0:
        raise EmptyInput("no vectors to stack")
    arrs = [as_vector(v) for v in vectors]
    dim = arrs[0].shape[0]
    for i, a in enumerate(arrs):
        if a.shape[0] != dim:
            raise DimensionMismatch(f"vector {i} has length {a.shape[0]}, expected {dim}")
    return np.stack(arrs)


# --- deterministic hash embedder -------------------------------------------

def _token_unit_vector(token: str, dimension: int, seed: int) -> np.ndarray:
    """Pseudo-random unit vector for one token.

    Counter-mode blake2b keyed by the seed fills the vector 8 lanes per
    64-byte digest, so the output depends only on (token, dimension, seed)
    and is byte-identical across processes and platforms.
    """
    key = (seed % 2**64).to_bytes(8, "little")
    data = token.encode("utf-8")
    n_blocks = (dimension + 7) // 8
    out = np.empty(n_blocks * 8, dtype=np.float64)
    for block in range(n_blocks):
        digest = hashlib.blake2b(
            data, digest_size=64, key=key, salt=block.to_bytes(8, "little")
        ).digest()
        for lane in range(8):
            chunk = digest[lane * 8 : lane * 8 + 8]
            u = int.from_bytes(chunk, "little") / 2.0**64
            out[block * 8 + lane] = 2.0 * u - 1.0
    out = out[:dimension]
    norm = float(np.sqrt(np.einsum("i,i->", out, out)))
    if norm == 0.0:  # unreachable in practice; keeps the function total
        out[0] = 1.0
        norm = 1.0
    return out / norm


def hash_embed(text: str, dimension: int = DEFAULT_DIMENSION, seed: int = 0) -> EmbeddingVector:
    """Deterministic stand-in embedding: normalized mean of token hash vectors.

    Tokens are the lowercased alphanumeric runs of ``text``; each maps to a
    pseudo-random unit vector derived from (token, seed). Texts that share
    tokens therefore score higher cosine similarity, in expectation, than
    token-disjoint texts. An empty token set falls back to the hash vector
    of the empty string. Total function: never raises.
    """
    if dimension < 2:
        raise DimensionMismatch("hash embeddings need dimension >= 2")
    tokens = word_tokens(text)
    if not tokens:
        return _token_unit_vector("", dimension, seed)
    acc = np.zeros(dimension, dtype=np.float64)
    for tok in tokens:
        acc += _token_unit_vector(tok, dimension, seed)
    acc /= len(tokens)
    norm = float(np.sqrt(np.einsum("i,i->", acc, acc)))
    if norm == 0.0:  # opposing token vectors cancelling exactly; see above
        return _token_unit_vector("", dimension, seed)
    return acc / norm


# --- providers --------------------------------------------------------------

class EmbeddingProvider(ABC):
    """Source of embedding vectors. All vectors share one dimension."""

    kind: str = "abstract"

    def __init__(self, dimension: int, model_id: str):
        if dimension < 1:
            raise DimensionMismatch("provider dimension must be positive")
        self.dimension = dimension
        self.model_id = model_id

    @abstractmethod
    def _embed(self, texts: list[str]) -> list[EmbeddingVector]:
        ...

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        return embed_texts(self, texts)


class HashEmbedder(EmbeddingProvider):
    """Pure-function provider: identical (text, dimension, seed) gives identical vectors."""

    kind = "hash"

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: int = 0):
        super().__init__(dimension, model_id=f"hash-blake2b-{dimension}d")
        self.seed = seed

    def _embed(self, texts: list[str]) -> list[EmbeddingVector]:
        return [hash_embed(t, self.dimension, self.seed) for t in texts]


@dataclass
class EmbeddingCache:
    """Exact-text lookup table of precomputed vectors."""

    dimension: int
    model_id: str = ""
    entries: dict[str, EmbeddingVector] = field(default_factory=dict)

    def add(self, text: str, vector: EmbeddingVector) -> None:
        v = as_vector(vector)
        if v.shape[0] != self.dimension:
            raise DimensionMismatch(
                f"cache holds {self.dimension}-d vectors, got {v.shape[0]}"
            )
        self.entries[text] = v


class CacheEmbedder(EmbeddingProvider):
    """Serves vectors from an EmbeddingCache; unknown texts raise CacheMiss."""

    kind = "cache"

    def __init__(self, cache: EmbeddingCache, cache_path=None):
        super().__init__(cache.dimension, model_id=cache.model_id or "cache")
        self.cache = cache
        self.cache_path = cache_path
        self.seed = None

    @classmethod
    def from_file(cls, path) -> "CacheEmbedder":
        return cls(load_cache(path), cache_path=str(path))

    def _embed(self, texts: list[str]) -> list[EmbeddingVector]:
        out = []
        for t in texts:
            if t not in self.cache.entries:
                raise CacheMiss(t)
            out.append(self.cache.entries[t])
        return out


class ServiceEmbedder(EmbeddingProvider):
    """HTTP client for an embedding service speaking the /embed wire protocol.

    POSTs ``{"texts": [...]}`` to ``<endpoint_url>/embed`` and expects
    ``{"dim": <int>, "embeddings": [[...], ...]}`` in request order.
    Requests are batched; each batch gets one retry (cold-starting model
    servers are slow) before ServiceUnavailable is raised.
    """

    kind = "service"

    def __init__(
        self,
        endpoint_url: str,
        dimension: int = DEFAULT_DIMENSION,
        timeout: float = 30.0,
        batch_size: int = 64,
        model_id: str = "service",
    ):
        super().__init__(dimension, model_id=model_id)
        self.endpoint_url = endpoint_url.rstrip("/")
        self.timeout = timeout
        self.batch_size = batch_size
        self.seed = None

    def _post_batch(self, batch: list[str]) -> list[EmbeddingVector]:
        url = f"{self.endpoint_url}/embed"
        last_error: Exception | None = None
        for _ in range(2):  # one retry
            try:
                resp = requests.post(url, json={"texts": batch}, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code != 200:
                last_error = ServiceUnavailable(
                    f"embedding service returned {resp.status_code}: {resp.text[:200]}"
                )
                continue
            payload = resp.json()
            dim = payload.get("dim")
            vectors = payload.get("embeddings", [])
            if dim != self.dimension:
                raise DimensionMismatch(
                    f"service returned dimension {dim}, expected {self.dimension}"
                )
            if len(vectors) != len(batch):
                raise ServiceUnavailable(
                    f"service returned {len(vectors)} vectors for {len(batch)} texts"
                )
            out = []
            for vec in vectors:
                v = as_vector(vec)
                if v.shape[0] != self.dimension:
                    raise DimensionMismatch(
                        f"service vector has length {v.shape[0]}, expected {self.dimension}"
                    )
                out.append(v)
            return out
        raise ServiceUnavailable(f"embedding service unreachable at {url}: {last_error}")

    def _embed(self, texts: list[str]) -> list[EmbeddingVector]:
        out: list[EmbeddingVector] = []
        for start in range(0, len(texts), self.batch_size):
            out.extend(self._post_batch(texts[start : start + self.batch_size]))
        return out


def embed_texts(provider: EmbeddingProvider, texts: Sequence[str]) -> list[EmbeddingVector]:
    """Embed texts in order with the given provider.

    Cache and service providers reject empty-string entries (the hash
    embedder is total and accepts them).
    """
    if len(texts) == 0:
        raise EmptyInput("no texts to embed")
    texts = list(texts)
    if provider.kind in ("cache", "service") and any(t == "" for t in texts):
        raise EmptyInput(f"empty text is not embeddable by the {provider.kind} provider")
    vectors = provider._embed(texts)
    for v in vectors:
        if v.shape[0] != provider.dimension:
            raise DimensionMismatch(
                f"provider returned length {v.shape[0]}, declared {provider.dimension}"
            )
    return vectors


# --- cache file format ------------------------------------------------------
#
# Line 1:  {"dimension": <int>, "model_id": "<string>"}
# Line 2+: {"text": "<string>", "vector": [<floats>]}
# UTF-8, one JSON object per line. Float values survive a round trip
# bit-for-bit (shortest round-trip decimal encoding).

def save_cache(cache: EmbeddingCache, path) -> None:
    """Write a cache to the JSONL cache format."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"dimension": cache.dimension, "model_id": cache.model_id}) + "\n")
        for text, vector in cache.entries.items():
            fh.write(json.dumps({"text": text, "vector": vector.tolist()}) + "\n")


def load_cache(path) -> EmbeddingCache:
    """Read a cache from the JSONL cache format; inverse of save_cache."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise MalformedCacheFile(f"{path}: missing header line")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise MalformedCacheFile(f"{path}: bad header: {exc}") from exc
        dimension = header.get("dimension")
        if not isinstance(dimension, int) or dimension < 1:
            raise MalformedCacheFile(f"{path}: header has no valid dimension")
        cache = EmbeddingCache(dimension=dimension, model_id=str(header.get("model_id", "")))
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                raise MalformedCacheFile(f"{path}: blank line {lineno}")
            try:
                entry = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedCacheFile(f"{path}: bad entry at line {lineno}: {exc}") from exc
            text = entry.get("text")
            vector = entry.get("vector")
            if not isinstance(text, str) or not isinstance(vector, list):
                raise MalformedCacheFile(f"{path}: line {lineno} lacks text/vector fields")
            if len(vector) != dimension:
                raise MalformedCacheFile(
                    f"{path}: line {lineno} has a length-{len(vector)} vector, header says {dimension}"
                )
            if text in cache.entries:
                raise MalformedCacheFile(f"{path}: duplicate text key at line {lineno}: {text!r}")
            cache.add(text, np.asarray(vector, dtype=np.float64))
    return cache
