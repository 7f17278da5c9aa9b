"""Acceptance suite: one test per release criterion, at the stated tolerances.

Each test prints an ACCEPTANCE PASS/FAIL line via the hook in conftest.py.
"""

import json
import subprocess
import sys
import time

import numpy as np

from survey_insights import (
    ClusteringConfig,
    HashEmbedder,
    annotate_cluster,
    assign_labels,
    build_assignment_matrix,
    cosine_similarity,
    density_coefficients,
    embed_texts,
    find_optimal_k,
    kmeans,
    layout_wordcloud,
    mean_embedding,
    preprocess_tokens,
    silhouette_score,
    unified_wordcloud,
)
from survey_insights.annotation import ClusterAnnotation, TokenWeight
from survey_insights.assignment import AssignmentMatrix
from survey_insights.insights import WordcloudEntry
from oracles import brute_force_silhouette, planted_blobs, rectangles_overlap
from test_clustering import random_instance

CLI = [sys.executable, "-m", "survey_insights.cli"]


def test_silhouette_matches_brute_force_oracle():
    """200 random instances, |difference| <= 1e-9, under 5 seconds."""
    rng = np.random.default_rng(2024)
    start = time.monotonic()
    for _ in range(200):
        X, labels = random_instance(rng, max_m=12, max_dim=4, ks=(2, 3, 4))
        result = silhouette_score(X, labels)
        values, score = brute_force_silhouette([x.tolist() for x in X], labels.tolist())
        assert np.all(np.abs(result.per_sample - np.array(values)) <= 1e-9)
        assert abs(result.score - score) <= 1e-9
    assert time.monotonic() - start < 5.0


def test_singleton_cluster_silhouette_is_exactly_zero():
    """Any sample alone in its cluster scores exactly 0."""
    cases = [
        ([[0.0, 0.0], [1.0, 0.0], [9.0, 9.0]], [0, 0, 1], [2]),
        ([[0.0], [5.0], [6.0]], [0, 1, 1], [0]),
        ([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]], [0, 1, 2], [0, 1, 2]),
    ]
    for points, labels, singleton_indices in cases:
        result = silhouette_score([np.array(p) for p in points], labels)
        for i in singleton_indices:
            assert result.per_sample[i] == 0.0


def test_lloyd_inertia_monotone_and_labels_fixed_point():
    """100 random instances: non-increasing inertia, self-reproducing labels."""
    rng = np.random.default_rng(77)
    for trial in range(100):
        m = int(rng.integers(6, 25))
        d = int(rng.integers(2, 6))
        k = int(rng.integers(2, min(6, m)))
        X = rng.normal(size=(m, d)) * rng.uniform(0.5, 5.0)
        model = kmeans(list(X), k, ClusteringConfig(seed=trial, restarts=2))
        hist = model.inertia_history
        assert all(hist[i + 1] <= hist[i] + 1e-9 for i in range(len(hist) - 1))
        reassigned = (
            ((X[:, None, :] - model.centroids[None, :, :]) ** 2).sum(axis=2).argmin(axis=1)
        )
        assert np.array_equal(reassigned, model.labels)


def test_planted_k_recovery():
    """k_star=3 on 3 blobs (centers >= 10 sigma apart, 20 points each), >=95/100."""
    start = time.monotonic()
    hits = 0
    for trial in range(100):
        rng = np.random.default_rng(10_000 + trial)
        points, _ = planted_blobs(rng, n_centers=3, points_per=20, sigma=1.0,
                                  min_separation_sigmas=10.0)
        result = find_optimal_k(points, ClusteringConfig(k_max=8, seed=trial, restarts=5))
        if result.k_star == 3:
            hits += 1
    elapsed = time.monotonic() - start
    assert hits >= 95, f"recovered k=3 in only {hits}/100 trials"
    assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_argmax_assignment_tie_rule_and_scale_invariance():
    """Assigned label maximizes its row; ties -> smallest index; scaling-invariant."""
    rng = np.random.default_rng(5)
    for _ in range(100):
        values = rng.uniform(-1, 1, size=(rng.integers(1, 10), rng.integers(1, 7)))
        result = assign_labels(AssignmentMatrix(values))
        for i, j in enumerate(result.assigned):
            assert values[i, j] >= values[i].max()

    # engineered symmetric tie
    tie = assign_labels(
        build_assignment_matrix(
            [np.array([1.0, 1.0])], [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        )
    )
    assert tie.assigned.tolist() == [0]

    responses = list(rng.normal(size=(8, 6)))
    labels = list(rng.normal(size=(5, 6)))
    base = assign_labels(build_assignment_matrix(responses, labels))
    for _ in range(20):
        alpha = float(rng.uniform(1e-4, 1e4))
        scaled = assign_labels(
            build_assignment_matrix([alpha * r for r in responses],
                                    [alpha * l for l in labels])
        )
        assert np.array_equal(base.assigned, scaled.assigned)


def test_density_and_unified_weights_exactness():
    """Sum(rho) = 1 +- 1e-12; w* = rho*w bit-exact; published sizes give pinned rho."""
    rng = np.random.default_rng(8)
    for _ in range(50):
        sizes = rng.integers(1, 40, size=rng.integers(1, 9)).tolist()
        rho = density_coefficients(sizes, sum(sizes))
        assert abs(float(rho.rho.sum()) - 1.0) <= 1e-12

        annotations = [
            ClusterAnnotation(
                cluster_id=cid,
                prominent=[
                    TokenWeight(token=f"t{cid}_{i}", weight=float(rng.uniform(-0.5, 1)))
                    for i in range(int(rng.integers(1, 6)))
                ],
                label="",
            )
            for cid in range(len(sizes))
        ]
        raw = {(a.cluster_id, tw.token): tw.weight for a in annotations for tw in a.prominent}
        for e in unified_wordcloud(annotations, rho):
            assert e.weight == float(rho.rho[e.cluster_id]) * raw[(e.cluster_id, e.token)]

    pinned = density_coefficients([6, 5, 5, 5, 4, 3], 28).rho
    expected = np.array([0.21429, 0.17857, 0.17857, 0.17857, 0.14286, 0.10714])
    assert np.all(np.abs(pinned - expected) <= 1e-5)


def test_annotation_top5_oracle_and_golden_tokens(fixture_responses, data_dir):
    """Top-5 equals full-sort brute force; weights bounded; golden token file holds."""
    provider = HashEmbedder(dimension=64, seed=13)
    rng = np.random.default_rng(3)
    for _ in range(10):
        size = int(rng.integers(1, 9))
        idx = rng.choice(len(fixture_responses), size=size, replace=False)
        sentences = [fixture_responses[i] for i in idx]
        ann = annotate_cluster(sentences, provider)
        ts = preprocess_tokens(sentences)
        centroid = mean_embedding(embed_texts(provider, sentences))
        scored = sorted(
            (-cosine_similarity(centroid, embed_texts(provider, [t])[0]), t)
            for t in ts.tokens
        )
        expected = [t for _, t in scored[: min(5, len(scored))]]
        assert [tw.token for tw in ann.prominent] == expected
        assert all(-1.0 <= tw.weight <= 1.0 for tw in ann.prominent)

    golden = json.loads((data_dir / "golden_tokens.json").read_text(encoding="utf-8"))
    for i, response in enumerate(fixture_responses, start=1):
        ts = preprocess_tokens([response])
        assert ts.tokens == golden[str(i)]["tokens"]
        assert ts.source_counts == golden[str(i)]["counts"]


def test_end_to_end_cluster_determinism(tmp_path, data_dir):
    """Two CLI runs on the fixture corpus, hash provider, fixed seed: identical bytes.

    Cross-platform stability rests on the hashlib-based embedder and
    BLAS-free reductions; this test pins two independent processes.
    """
    outputs = []
    for run in ("one", "two"):
        workdir = tmp_path / run
        workdir.mkdir()
        result = subprocess.run(
            CLI + [
                "cluster",
                "--input", str(data_dir / "responses.txt"),
                "--seed", "7",
                "--out", "report.json",
                "--svg-dir", "svg",
            ],
            cwd=workdir, capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        report_bytes = (workdir / "report.json").read_bytes()
        svg_bytes = {
            p.name: p.read_bytes() for p in sorted((workdir / "svg").glob("*.svg"))
        }
        outputs.append((report_bytes, svg_bytes))
    assert outputs[0][0] == outputs[1][0], "report JSON differs between runs"
    assert outputs[0][1].keys() == outputs[1][1].keys()
    for name in outputs[0][1]:
        assert outputs[0][1][name] == outputs[1][1][name], f"{name} differs between runs"


def test_svg_layout_has_no_overlapping_boxes():
    """Randomized 30-entry clouds pass a pairwise rectangle-intersection oracle."""
    for seed in range(10):
        rng = np.random.default_rng(seed)
        entries = [
            WordcloudEntry(
                token="".join(rng.choice(list("abcdefghij"), size=rng.integers(2, 14))),
                cluster_id=int(rng.integers(0, 8)),
                weight=float(rng.uniform(-0.2, 1.0)),
                scope="unified",
            )
            for _ in range(30)
        ]
        placed = layout_wordcloud(entries)
        assert len(placed) == 30
        boxes = [(p.x, p.y, p.width, p.height) for p in placed]
        for i in range(30):
            for j in range(i + 1, 30):
                assert not rectangles_overlap(boxes[i], boxes[j]), (
                    f"seed {seed}: boxes {i} and {j} overlap"
                )
