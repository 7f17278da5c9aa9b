"""Lloyd k-means over embedding vectors, silhouette scoring, and optimal-k selection.

Distances are Euclidean throughout. The silhouette score balances cohesion
(mean distance to one's own cluster) against separation (minimum mean
distance to any other cluster); the best cluster count k* maximizes the
mean silhouette over a configured sweep range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .embedding import EmbeddingVector, stack_vectors
from .errors import (
    DimensionMismatch,
    KTooLarge,
    LengthMismatch,
    SingleCluster,
    TooFewSamples,
)


@dataclass(frozen=True)
class ClusteringConfig:
    """Knobs for the k sweep and the Lloyd runs.

    k_max of None resolves to min(20, m - 1) once the sample count m is
    known. Each kmeans call runs `restarts` independent seeded
    initializations (seeds seed, seed+1, ...) and keeps the lowest-inertia
    model, so results are deterministic for fixed inputs and config.
    """

    k_min: int = 2
    k_max: int | None = None
    max_iterations: int = 300
    tolerance: float = 1e-6
    seed: int = 0
    restarts: int = 10

    def __post_init__(self):
        if self.k_min < 2:
            raise ValueError("k_min must be at least 2")
        if self.k_max is not None and self.k_max < self.k_min:
            raise ValueError("k_max must be >= k_min")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if self.restarts < 1:
            raise ValueError("restarts must be positive")

    def resolve_k_max(self, m: int) -> int:
        return min(20, m - 1) if self.k_max is None else self.k_max


@dataclass
class ClusterModel:
    """A fitted k-means model: centroids, hard labels, and final inertia.

    inertia_history records the objective after each assignment step of the
    winning restart; Lloyd guarantees it is non-increasing.
    """

    k: int
    centroids: np.ndarray  # (k, d)
    labels: np.ndarray  # (m,) ints in [0, k)
    inertia: float
    inertia_history: list[float] = field(default_factory=list)


@dataclass
class SilhouetteResult:
    per_sample: np.ndarray  # (m,) values in [-1, 1]
    score: float  # arithmetic mean of per_sample


@dataclass
class KSelectionResult:
    k_star: int
    scores: dict[int, float]  # k -> silhouette score, for every swept k
    model: ClusterModel  # the fitted model at k_star


def _squared_distances(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Exact (no Gram-matrix shortcut) squared Euclidean distances, (m, k)."""
    return ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: spread initial centroids with D^2 sampling."""
    m = X.shape[0]
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(m))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(m))
        else:
            idx = int(rng.choice(m, p=d2 / total))
        centers[j] = X[idx]
        d2 = np.minimum(d2, ((X - centers[j]) ** 2).sum(axis=1))
    return centers


def _repair_empty(X: np.ndarray, C: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Reseed each empty cluster at the point farthest from its stale centroid.

    Points already coinciding with some centroid are skipped so two empty
    clusters never grab the same location. Returns fresh labels.
    """
    for attempt in range(k):
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        for j in empty:
            d = ((X - C[j]) ** 2).sum(axis=1)
            taken = np.zeros(len(X), dtype=bool)
            for c in C:
                taken |= np.all(X == c, axis=1)
            if taken.all():
                raise KTooLarge(
                    f"cannot fill {len(empty)} empty clusters: "
                    f"k exceeds the number of distinct vectors"
                )
            d[taken] = -1.0
            C[j] = X[int(d.argmax())]
        labels = _squared_distances(X, C).argmin(axis=1)
    counts = np.bincount(labels, minlength=k)
    if (counts == 0).any():
        raise KTooLarge("k exceeds the number of distinct vectors")
    return labels


def _lloyd_run(
    X: np.ndarray, k: int, seed: int, max_iterations: int, tolerance: float
) -> ClusterModel:
    """One seeded k-means++ initialization followed by Lloyd iterations."""
    rng = np.random.default_rng(seed)
    C = _kmeanspp_init(X, k, rng)
    history: list[float] = []
    labels = np.zeros(len(X), dtype=np.int64)
    for _ in range(max_iterations):
        D2 = _squared_distances(X, C)
        labels = D2.argmin(axis=1)
        labels = _repair_empty(X, C, labels, k)
        D2 = _squared_distances(X, C)
        history.append(float(D2[np.arange(len(X)), labels].sum()))
        new_C = C.copy()
        for j in range(k):
            mask = labels == j
            new_C[j] = X[mask].mean(axis=0)
        shift = float(np.sqrt(((new_C - C) ** 2).sum(axis=1)).max())
        C = new_C
        if shift <= tolerance:
            break
    # Final assignment so labels are a nearest-centroid fixed point.
    labels = _squared_distances(X, C).argmin(axis=1)
    labels = _repair_empty(X, C, labels, k)
    D2 = _squared_distances(X, C)
    inertia = float(D2[np.arange(len(X)), labels].sum())
    history.append(inertia)
    return ClusterModel(k=k, centroids=C, labels=labels, inertia=inertia,
                        inertia_history=history)


def kmeans(
    vectors: Sequence[EmbeddingVector], k: int, config: ClusteringConfig | None = None
) -> ClusterModel:
    """Best-of-restarts Lloyd k-means with k-means++ seeding.

    Runs config.restarts independent initializations (seeds seed, seed+1,
    ...) and returns the model with minimal inertia. Every returned cluster
    is nonempty and the labels reproduce themselves under nearest-centroid
    reassignment.
    """
    config = config or ClusteringConfig()
    X = stack_vectors(vectors)
    m = X.shape[0]
    if k < 1:
        raise KTooLarge("k must be at least 1")
    if k > m:
        raise KTooLarge(f"k={k} exceeds the number of vectors m={m}")
    best: ClusterModel | None = None
    for r in range(config.restarts):
        model = _lloyd_run(X, k, config.seed + r, config.max_iterations, config.tolerance)
        if best is None or model.inertia < best.inertia:
            best = model
    assert best is not None
    return best


def silhouette_score(
    vectors: Sequence[EmbeddingVector], labels: Sequence[int]
) -> SilhouetteResult:
    """Per-sample silhouette values and their mean, with Euclidean distances.

    For sample i: cohesion is the mean distance to the other members of its
    cluster; separation is the minimum over other clusters of the mean
    distance to that cluster. The silhouette is (separation - cohesion) /
    max(cohesion, separation), and exactly 0 for samples alone in their
    cluster.
    """
    X = stack_vectors(vectors)
    labels = np.asarray(labels, dtype=np.int64)
    m = X.shape[0]
    if labels.shape[0] != m:
        raise LengthMismatch(f"{labels.shape[0]} labels for {m} vectors")
    unique = np.unique(labels)
    if unique.size < 2:
        raise SingleCluster("silhouette needs at least two distinct clusters")

    D = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
    # sums[c][i] = total distance from sample i to every member of cluster c
    sums = {int(c): D[:, labels == c].sum(axis=1) for c in unique}
    counts = {int(c): int((labels == c).sum()) for c in unique}

    per_sample = np.zeros(m, dtype=np.float64)
    for i in range(m):
        own = int(labels[i])
        if counts[own] == 1:
            continue  # singleton cluster: silhouette is defined as 0
        cohesion = sums[own][i] / (counts[own] - 1)
        separation = min(
            sums[c][i] / counts[c] for c in sums if c != own
        )
        denom = max(cohesion, separation)
        per_sample[i] = 0.0 if denom == 0.0 else (separation - cohesion) / denom
    return SilhouetteResult(per_sample=per_sample, score=float(per_sample.mean()))


def find_optimal_k(
    vectors: Sequence[EmbeddingVector], config: ClusteringConfig | None = None
) -> KSelectionResult:
    """Sweep k over [k_min, k_max], score each clustering, keep the argmax.

    Ties go to the smallest k. The full score trace is returned for
    reporting.
    """
    config = config or ClusteringConfig()
    X = stack_vectors(vectors)
    m = X.shape[0]
    if m < 3:
        raise TooFewSamples(f"need at least 3 vectors to sweep k, got {m}")
    k_max = config.resolve_k_max(m)
    if not (2 <= config.k_min <= k_max <= m - 1):
        raise ValueError(
            f"invalid sweep range: need 2 <= k_min <= k_max <= m-1, "
            f"got k_min={config.k_min}, k_max={k_max}, m={m}"
        )
    scores: dict[int, float] = {}
    models: dict[int, ClusterModel] = {}
    for k in range(config.k_min, k_max + 1):
        model = kmeans(list(X), k, config)
        models[k] = model
        scores[k] = silhouette_score(list(X), model.labels).score
    k_star = config.k_min
    for k in sorted(scores):
        if scores[k] > scores[k_star]:
            k_star = k
    return KSelectionResult(k_star=k_star, scores=scores, model=models[k_star])
