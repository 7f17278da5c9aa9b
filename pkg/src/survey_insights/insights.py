"""Wordcloud weighting, descriptive statistics, and centroid-correlation insights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .annotation import ClusterAnnotation
from .embedding import EmbeddingVector, stack_vectors
from .errors import EmptyCluster, LengthMismatch, SizeSumMismatch, ZeroVector

MERGE_THRESHOLD = 0.8


@dataclass
class WordcloudEntry:
    token: str
    cluster_id: int
    weight: float
    scope: str  # "cluster" or "unified"


@dataclass
class DensityCoefficients:
    """Cluster-size fractions; they sum to 1 and scale the unified wordcloud."""

    rho: np.ndarray


@dataclass
class ClusterStats:
    """Whitespace word-count statistics of a cluster's raw responses."""

    cluster_id: int
    size: int
    min_words: int
    max_words: int
    avg_words: float


@dataclass
class CentroidCorrelation:
    """Symmetric matrix of pairwise centroid cosine similarities."""

    matrix: np.ndarray
    threshold: float = MERGE_THRESHOLD


def density_coefficients(cluster_sizes: Sequence[int], m: int) -> DensityCoefficients:
    """rho_i = size_i / m, in input order."""
    sizes = np.asarray(cluster_sizes, dtype=np.int64)
    if (sizes <= 0).any():
        raise SizeSumMismatch("cluster sizes must be positive")
    if int(sizes.sum()) != m:
        raise SizeSumMismatch(f"sizes sum to {int(sizes.sum())}, expected m={m}")
    return DensityCoefficients(rho=sizes / float(m))


def cluster_wordcloud(annotation: ClusterAnnotation) -> list[WordcloudEntry]:
    """Cluster-scope entries: the prominent tokens at their raw weights."""
    return [
        WordcloudEntry(
            token=tw.token,
            cluster_id=annotation.cluster_id,
            weight=tw.weight,
            scope="cluster",
        )
        for tw in annotation.prominent
    ]


def unified_wordcloud(
    annotations: Sequence[ClusterAnnotation], rho: DensityCoefficients
) -> list[WordcloudEntry]:
    """Cross-cluster entries with density-scaled weights, heaviest first.

    Every prominent token is emitted once per owning cluster with weight
    rho_i * w (an exact float product); a token prominent in two clusters
    yields two entries so cluster identity (and coloring) is preserved.
    """
    if len(annotations) != len(rho.rho):
        raise LengthMismatch(
            f"{len(annotations)} annotations but {len(rho.rho)} density coefficients"
        )
    entries = [
        WordcloudEntry(
            token=tw.token,
            cluster_id=ann.cluster_id,
            weight=float(rho.rho[i]) * tw.weight,
            scope="unified",
        )
        for i, ann in enumerate(annotations)
        for tw in ann.prominent
    ]
    entries.sort(key=lambda e: (-e.weight, e.cluster_id, e.token))
    return entries


def centroid_correlation(
    centroids: Sequence[EmbeddingVector], threshold: float = MERGE_THRESHOLD
) -> CentroidCorrelation:
    """Pairwise cosine similarity between cluster centroids, unit diagonal."""
    C = stack_vectors(centroids)
    if C.shape[0] < 2:
        raise LengthMismatch("need at least two centroids to correlate")
    norms = np.sqrt(np.einsum("ij,ij->i", C, C))
    if np.any(norms == 0.0):
        raise ZeroVector("a centroid has zero norm")
    Cn = C / norms[:, None]
    M = np.clip(np.einsum("id,jd->ij", Cn, Cn), -1.0, 1.0)
    M = (M + M.T) / 2.0  # exact symmetry
    np.fill_diagonal(M, 1.0)
    return CentroidCorrelation(matrix=M, threshold=threshold)


def suggest_merges(corr: CentroidCorrelation) -> list[tuple[int, int]]:
    """Upper-triangle pairs at or above the threshold, most similar first.

    Advisory only: the caller decides whether to merge or re-cluster.
    """
    k = corr.matrix.shape[0]
    pairs = [
        (i, j)
        for i in range(k)
        for j in range(i + 1, k)
        if corr.matrix[i, j] >= corr.threshold
    ]
    pairs.sort(key=lambda p: (-corr.matrix[p[0], p[1]], p))
    return pairs


def cluster_stats(clusters: Mapping[int, Sequence[str]]) -> list[ClusterStats]:
    """Min/max/average whitespace word counts of the raw responses per cluster.

    Counts deliberately use raw whitespace tokens (response length), not the
    preprocessed vocabulary.
    """
    out = []
    for cluster_id in sorted(clusters):
        members = clusters[cluster_id]
        if len(members) == 0:
            raise EmptyCluster(f"cluster {cluster_id} has no responses")
        counts = [len(text.split()) for text in members]
        out.append(
            ClusterStats(
                cluster_id=cluster_id,
                size=len(members),
                min_words=min(counts),
                max_words=max(counts),
                avg_words=sum(counts) / len(counts),
            )
        )
    return out
