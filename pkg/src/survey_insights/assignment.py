"""Response-to-title assignment via cosine similarity.

Builds the dense m x l similarity matrix between response embeddings and
title embeddings, assigns each response the most similar title, and
summarizes winning similarities per title.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embedding import EmbeddingVector, stack_vectors
from .errors import DimensionMismatch, EmptyInput, MismatchedInputs, ZeroVector


@dataclass
class AssignmentMatrix:
    """m x l cosine similarities; rows are responses, columns are titles."""

    values: np.ndarray

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def l(self) -> int:
        return self.values.shape[1]


@dataclass
class AssignmentResult:
    """Argmax assignment plus per-title statistics of the winning similarities.

    Statistics use the population standard deviation so a single-response
    title still has a well-defined (zero) spread. Titles that win no
    responses have mean and std recorded as None, never 0.0.
    """

    assigned: np.ndarray  # (m,) title indices
    counts: np.ndarray  # (l,) responses per title
    per_label_mean: list[float | None]
    per_label_std: list[float | None]


@dataclass
class LabelStats:
    label: int
    count: int
    mean: float | None
    std: float | None


def _normalized_rows(X: np.ndarray, what: str) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", X, X))
    if np.any(norms == 0.0):
        raise ZeroVector(f"{what} vector {int(np.flatnonzero(norms == 0.0)[0])} has zero norm")
    return X / norms[:, None]


def build_assignment_matrix(
    response_vectors: Sequence[EmbeddingVector],
    label_vectors: Sequence[EmbeddingVector],
) -> AssignmentMatrix:
    """Pairwise cosine similarity between every response and every title."""
    if len(response_vectors) == 0 or len(label_vectors) == 0:
        raise EmptyInput("assignment needs at least one response and one title")
    R = stack_vectors(response_vectors)
    L = stack_vectors(label_vectors)
    if R.shape[1] != L.shape[1]:
        raise DimensionMismatch(
            f"responses are {R.shape[1]}-d but titles are {L.shape[1]}-d"
        )
    Rn = _normalized_rows(R, "response")
    Ln = _normalized_rows(L, "title")
    values = np.clip(np.einsum("id,jd->ij", Rn, Ln), -1.0, 1.0)
    return AssignmentMatrix(values=values)


def assign_labels(matrix: AssignmentMatrix) -> AssignmentResult:
    """Assign each row its argmax column; exact ties go to the smallest index."""
    A = matrix.values
    assigned = A.argmax(axis=1)  # argmax returns the first maximal index
    winners = A[np.arange(matrix.m), assigned]
    counts = np.bincount(assigned, minlength=matrix.l)
    means: list[float | None] = []
    stds: list[float | None] = []
    for j in range(matrix.l):
        vals = winners[assigned == j]
        if vals.size == 0:
            means.append(None)
            stds.append(None)
        else:
            means.append(float(vals.mean()))
            stds.append(float(vals.std()))  # population std (ddof=0)
    return AssignmentResult(
        assigned=assigned, counts=counts, per_label_mean=means, per_label_std=stds
    )


def label_similarity_stats(
    matrix: AssignmentMatrix, result: AssignmentResult
) -> list[LabelStats]:
    """Report-ready per-title table of the stats in `result`, marking empty titles."""
    if result.assigned.shape[0] != matrix.m or result.counts.shape[0] != matrix.l:
        raise MismatchedInputs(
            f"result shaped for {result.assigned.shape[0]}x{result.counts.shape[0]}, "
            f"matrix is {matrix.m}x{matrix.l}"
        )
    return [
        LabelStats(
            label=j,
            count=int(result.counts[j]),
            mean=result.per_label_mean[j],
            std=result.per_label_std[j],
        )
        for j in range(matrix.l)
    ]
