import numpy as np
import pytest

from survey_insights import (
    ClusteringConfig,
    find_optimal_k,
    kmeans,
    mean_embedding,
    silhouette_score,
)
from survey_insights.errors import (
    KTooLarge,
    LengthMismatch,
    SingleCluster,
    TooFewSamples,
)
from oracles import brute_force_silhouette, planted_blobs, same_partition


def random_instance(rng, max_m=12, max_dim=4, ks=(2, 3, 4)):
    m = int(rng.integers(4, max_m + 1))
    dim = int(rng.integers(2, max_dim + 1))
    k = int(rng.choice(ks))
    X = rng.normal(size=(m, dim)) * 3.0
    while True:
        labels = rng.integers(0, k, size=m)
        if len(np.unique(labels)) >= 2:
            return list(X), labels


class TestKmeans:
    def test_k1_degenerates_to_mean(self):
        rng = np.random.default_rng(0)
        vectors = list(rng.normal(size=(9, 3)))
        model = kmeans(vectors, 1, ClusteringConfig(seed=0))
        assert np.array_equal(model.centroids[0], mean_embedding(vectors))
        assert np.all(model.labels == 0)

    def test_point_masses(self):
        vectors = [np.array([0.0, 0.0])] * 3 + [np.array([10.0, 10.0])] * 3
        model = kmeans(vectors, 2, ClusteringConfig(seed=1))
        got = sorted(map(tuple, model.centroids.tolist()))
        assert got == [(0.0, 0.0), (10.0, 10.0)]
        assert model.inertia == 0.0

    def test_planted_blobs_recovered(self):
        rng = np.random.default_rng(42)
        points, truth = planted_blobs(rng, sigma=0.1, min_separation_sigmas=100.0)
        model = kmeans(points, 3, ClusteringConfig(seed=7))
        assert same_partition(model.labels.tolist(), truth)

    def test_k_too_large(self):
        vectors = [np.array([0.0, 1.0]), np.array([2.0, 3.0])]
        with pytest.raises(KTooLarge):
            kmeans(vectors, 3, ClusteringConfig())

    def test_no_empty_clusters_and_fixed_point(self):
        rng = np.random.default_rng(5)
        for trial in range(20):
            X = rng.normal(size=(rng.integers(6, 20), rng.integers(2, 5)))
            k = int(rng.integers(2, 5))
            model = kmeans(list(X), k, ClusteringConfig(seed=trial, restarts=3))
            assert set(model.labels.tolist()) == set(range(k))
            reassigned = (
                ((X[:, None, :] - model.centroids[None, :, :]) ** 2).sum(axis=2).argmin(axis=1)
            )
            assert np.array_equal(reassigned, model.labels)

    def test_inertia_history_non_increasing(self):
        rng = np.random.default_rng(9)
        for trial in range(10):
            X = rng.normal(size=(15, 3)) * 2
            model = kmeans(list(X), 3, ClusteringConfig(seed=trial, restarts=1))
            hist = model.inertia_history
            assert all(hist[i + 1] <= hist[i] + 1e-9 for i in range(len(hist) - 1))

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        X = list(rng.normal(size=(12, 4)))
        a = kmeans(X, 3, ClusteringConfig(seed=11))
        b = kmeans(X, 3, ClusteringConfig(seed=11))
        assert np.array_equal(a.labels, b.labels)
        assert a.centroids.tobytes() == b.centroids.tobytes()
        assert a.inertia == b.inertia


class TestSilhouette:
    def test_zero_cohesion_perfect_separation(self):
        p = np.array([1.0, 2.0])
        q = np.array([5.0, -1.0])
        result = silhouette_score([p, p, q, q], [0, 0, 1, 1])
        assert np.all(result.per_sample == 1.0)
        assert result.score == 1.0

    def test_singleton_cluster_is_exactly_zero(self):
        result = silhouette_score(
            [np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([5.0, 5.0])],
            [0, 0, 1],
        )
        assert result.per_sample[2] == 0.0

    def test_two_pair_clusters_value(self):
        X = [np.array([0.0, 0.0]), np.array([0.0, 1.0]),
             np.array([10.0, 0.0]), np.array([10.0, 1.0])]
        labels = [0, 0, 1, 1]
        result = silhouette_score(X, labels)
        assert abs(result.score - 0.90025) <= 1e-4
        _, oracle = brute_force_silhouette([x.tolist() for x in X], labels)
        assert abs(result.score - oracle) <= 1e-12

    def test_matches_brute_force_on_random_instances(self):
        rng = np.random.default_rng(21)
        for _ in range(40):
            X, labels = random_instance(rng)
            result = silhouette_score(X, labels)
            values, score = brute_force_silhouette([x.tolist() for x in X], labels.tolist())
            assert np.all(np.abs(result.per_sample - np.array(values)) <= 1e-9)
            assert abs(result.score - score) <= 1e-9
            assert np.all(result.per_sample >= -1.0) and np.all(result.per_sample <= 1.0)

    def test_score_is_mean_of_per_sample(self):
        rng = np.random.default_rng(2)
        X, labels = random_instance(rng)
        result = silhouette_score(X, labels)
        assert abs(result.score - float(result.per_sample.mean())) <= 1e-12

    def test_errors(self):
        with pytest.raises(SingleCluster):
            silhouette_score([np.zeros(2), np.ones(2)], [0, 0])
        with pytest.raises(LengthMismatch):
            silhouette_score([np.zeros(2), np.ones(2)], [0, 1, 0])


class TestFindOptimalK:
    def test_three_points_forces_k2(self):
        X = [np.array([0.0, 0.0]), np.array([5.0, 0.0]), np.array([0.0, 5.0])]
        result = find_optimal_k(X, ClusteringConfig(seed=0))
        assert sorted(result.scores) == [2]
        assert result.k_star == 2

    def test_too_few_samples(self):
        with pytest.raises(TooFewSamples):
            find_optimal_k([np.zeros(2), np.ones(2)], ClusteringConfig())

    def test_planted_blobs_select_k3(self):
        rng = np.random.default_rng(100)
        points, _ = planted_blobs(rng)
        result = find_optimal_k(points, ClusteringConfig(k_max=8, seed=0))
        assert result.k_star == 3
        assert sorted(result.scores) == list(range(2, 9))

    def test_deterministic_selection(self):
        rng = np.random.default_rng(17)
        X = list(rng.normal(size=(14, 3)))
        a = find_optimal_k(X, ClusteringConfig(k_max=5, seed=4))
        b = find_optimal_k(X, ClusteringConfig(k_max=5, seed=4))
        assert a.k_star == b.k_star
        assert a.scores == b.scores
        assert a.model.centroids.tobytes() == b.model.centroids.tobytes()
        assert np.array_equal(a.model.labels, b.model.labels)

    def test_tie_breaks_to_smallest_k(self):
        # Two identical far-apart pairs: k=2 and k=3 both reach score 1.0
        # regions rarely; instead verify the argmax scan prefers smaller k on
        # exact ties by a direct synthetic check of the selection rule.
        X = [np.array([0.0, 0.0])] * 2 + [np.array([100.0, 0.0])] * 2 + [np.array([0.0, 100.0])] * 2
        result = find_optimal_k(X, ClusteringConfig(k_max=3, seed=0))
        # Perfect sub-splits: k=2 leaves one cluster of two point-masses; both
        # k=2 and k=3 can reach 1.0 only if every cluster is a point mass; at
        # k=2 one cluster has spread, so k=3 must win -- sanity-check that the
        # maximum is genuinely attained.
        assert result.k_star == max(result.scores, key=lambda k: (result.scores[k], -k))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ClusteringConfig(k_min=1)
        with pytest.raises(ValueError):
            ClusteringConfig(k_min=4, k_max=3)
        with pytest.raises(ValueError):
            ClusteringConfig(restarts=0)
