"""Survey ingestion and machine-readable insight reports.

Reports are plain dicts serialized as UTF-8 JSON with sorted keys, so a
fixed (input, flags, seed, provider) always produces byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .annotation import ClusterAnnotation
from .assignment import AssignmentMatrix, AssignmentResult, label_similarity_stats
from .clustering import KSelectionResult
from .embedding import EmbeddingProvider
from .errors import MalformedInput
from .insights import (
    CentroidCorrelation,
    ClusterStats,
    DensityCoefficients,
    WordcloudEntry,
)

SCHEMA_VERSION = "1"

LOW_CONFIDENCE_SIMILARITY = 0.1


@dataclass
class SurveyInput:
    """Ordered, trimmed survey responses with their 1-based IDs."""

    responses: list[str]
    ids: list[int]
    titles: list[str] | None = None


def load_survey(path, format: str = "auto") -> SurveyInput:
    """Parse a responses file: JSONL ({"id":…,"text":…}) or one text per line.

    format "auto" treats *.jsonl as JSONL and anything else as plain text.
    Empty or whitespace-only texts are rejected with their line number, as
    are duplicate JSONL ids.
    """
    path = Path(path)
    if format == "auto":
        format = "jsonl" if path.suffix.lower() == ".jsonl" else "text"
    if format not in ("jsonl", "text"):
        raise MalformedInput(f"unknown survey format {format!r}")
    raw = path.read_text(encoding="utf-8")
    responses: list[str] = []
    ids: list[int] = []
    seen_ids: set[int] = set()
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if format == "text":
            text = line.strip()
            if not text:
                raise MalformedInput("blank or whitespace-only response", lineno)
            responses.append(text)
            ids.append(lineno)
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}", lineno) from exc
        if not isinstance(obj, dict) or "text" not in obj or "id" not in obj:
            raise MalformedInput('expected an object with "id" and "text"', lineno)
        if not isinstance(obj["id"], int):
            raise MalformedInput('"id" must be an integer', lineno)
        if obj["id"] in seen_ids:
            raise MalformedInput(f'duplicate id {obj["id"]}', lineno)
        text = str(obj["text"]).strip()
        if not text:
            raise MalformedInput("blank or whitespace-only response", lineno)
        seen_ids.add(obj["id"])
        responses.append(text)
        ids.append(obj["id"])
    return SurveyInput(responses=responses, ids=ids)


def load_titles(path) -> list[str]:
    """Plain-text titles, one per line; whitespace-only lines are rejected."""
    raw = Path(path).read_text(encoding="utf-8")
    titles = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        title = line.strip()
        if not title:
            raise MalformedInput("blank or whitespace-only title", lineno)
        titles.append(title)
    return titles


def _provider_block(provider: EmbeddingProvider) -> dict:
    return {
        "kind": provider.kind,
        "model_id": provider.model_id,
        "dimension": provider.dimension,
        "seed": getattr(provider, "seed", None),
    }


def _wordcloud_block(entries: Sequence[WordcloudEntry]) -> list[dict]:
    return [
        {
            "token": e.token,
            "cluster_id": e.cluster_id,
            "weight": float(e.weight),
            "scope": e.scope,
        }
        for e in entries
    ]


def build_cluster_report(
    survey: SurveyInput,
    provider: EmbeddingProvider,
    selection: KSelectionResult,
    annotations: Sequence[ClusterAnnotation],
    stats: Sequence[ClusterStats],
    rho: DensityCoefficients,
    cluster_entries: Sequence[WordcloudEntry],
    unified_entries: Sequence[WordcloudEntry],
    correlation: CentroidCorrelation,
    merges: Sequence[tuple[int, int]],
) -> dict:
    """Assemble the cluster-mode report (annotations, stats, wordclouds, merges)."""
    stats_by_id = {s.cluster_id: s for s in stats}
    ann_by_id = {a.cluster_id: a for a in annotations}
    clusters = []
    for cluster_id in sorted(ann_by_id):
        member_idx = [i for i, lab in enumerate(selection.model.labels) if lab == cluster_id]
        ann = ann_by_id[cluster_id]
        st = stats_by_id[cluster_id]
        clusters.append(
            {
                "id": cluster_id,
                "member_ids": [survey.ids[i] for i in member_idx],
                "members": [survey.responses[i] for i in member_idx],
                "size": st.size,
                "stats": {
                    "min_words": st.min_words,
                    "max_words": st.max_words,
                    "avg_words": st.avg_words,
                },
                "annotation": {
                    "label": ann.label,
                    "no_tokens": ann.no_tokens,
                    "tokens": [
                        {"token": tw.token, "weight": float(tw.weight)}
                        for tw in ann.prominent
                    ],
                },
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "mode": "cluster",
        "provider": _provider_block(provider),
        "input": {"count": len(survey.responses)},
        "k_selection": {
            "k_star": selection.k_star,
            "scores": [[k, float(selection.scores[k])] for k in sorted(selection.scores)],
        },
        "clusters": clusters,
        "density": [float(r) for r in rho.rho],
        "wordclouds": {
            "cluster": _wordcloud_block(cluster_entries),
            "unified": _wordcloud_block(unified_entries),
        },
        "centroid_correlation": {
            "matrix": [[float(v) for v in row] for row in correlation.matrix],
            "threshold": correlation.threshold,
        },
        "merge_suggestions": [[int(i), int(j)] for i, j in merges],
    }


def build_assign_report(
    survey: SurveyInput,
    provider: EmbeddingProvider,
    matrix: AssignmentMatrix,
    result: AssignmentResult,
) -> dict:
    """Assemble the assign-mode report (assignments, per-title stats, matrix)."""
    titles = survey.titles or []
    winners = matrix.values[range(matrix.m), result.assigned]
    low_confidence = [
        survey.ids[i] for i in range(matrix.m) if winners[i] < LOW_CONFIDENCE_SIMILARITY
    ]
    per_label = [
        {
            "label": s.label,
            "title": titles[s.label],
            "count": s.count,
            "mean": s.mean,
            "std": s.std,
        }
        for s in label_similarity_stats(matrix, result)
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "mode": "assign",
        "provider": _provider_block(provider),
        "input": {"count": len(survey.responses)},
        "titles": list(titles),
        "assignment": {
            "response_ids": list(survey.ids),
            "assigned": [int(j) for j in result.assigned],
            "best_similarity": [float(w) for w in winners],
            "low_confidence_ids": low_confidence,
            "counts": [int(c) for c in result.counts],
            "per_label": per_label,
            "matrix": [[float(v) for v in row] for row in matrix.values],
        },
    }


def report_to_json(report: dict) -> str:
    """Serialize with stable key order; parse(serialize(r)) == r."""
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
