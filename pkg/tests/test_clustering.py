"""Tests for the mini-batch k-means quantization pipeline."""

import numpy as np
import pytest

from prd import (
    ClusterModel,
    DimensionMismatchError,
    DomainError,
    FeatureSet,
    InsufficientDataError,
    assign,
    averaged_prd,
    build_histograms,
    clustered_prd_analysis,
    gaussian_blobs,
    max_f_beta,
    max_precision,
    max_recall,
    minibatch_kmeans,
)


def blob_set(n_classes=3, points=200, dim=4, seed=0, sigma=0.01, separation=10.0):
    # centers sit separation * sqrt(2) apart in orthogonal placement
    return gaussian_blobs(
        n_classes, points, dim, sigma=sigma, separation=separation / np.sqrt(2) / sigma, seed=seed
    )


class TestFeatureSet:
    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            FeatureSet(np.empty((0, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            FeatureSet(np.array([[1.0, np.inf]]))

    def test_rejects_label_length_mismatch(self):
        with pytest.raises(DomainError):
            FeatureSet(np.ones((3, 2)), labels=np.array([0, 1]))

    def test_rejects_float_labels(self):
        with pytest.raises(DomainError):
            FeatureSet(np.ones((2, 2)), labels=np.array([0.0, 1.0]))

    def test_take_carries_labels(self):
        fs = FeatureSet(np.arange(8.0).reshape(4, 2), labels=np.array([0, 0, 1, 1]))
        sub = fs.take([2, 3])
        assert sub.labels.tolist() == [1, 1]
        assert sub.vectors[0, 0] == 4.0


class TestMinibatchKmeans:
    def test_single_cluster_full_batch_is_the_mean(self, rng):
        data = FeatureSet(rng.normal(size=(50, 3)))
        model = minibatch_kmeans(data, 1, batch_size=1000, iterations=5, seed=3)
        np.testing.assert_allclose(
            model.centroids[0], data.vectors.mean(axis=0), atol=1e-6
        )

    def test_recovers_separated_blobs(self):
        data = blob_set(n_classes=3, points=200, dim=4, sigma=0.01, separation=10.0)
        model = minibatch_kmeans(data, 3, batch_size=128, iterations=200, seed=1)
        centers = np.eye(3, 4) * 10.0 / np.sqrt(2)
        matched = set()
        for c in model.centroids:
            dists = np.linalg.norm(centers - c, axis=1)
            j = int(np.argmin(dists))
            assert dists[j] < 0.1
            matched.add(j)
        assert matched == {0, 1, 2}

    def test_deterministic_given_seed(self, rng):
        data = FeatureSet(rng.normal(size=(300, 5)))
        a = minibatch_kmeans(data, 4, batch_size=64, iterations=100, seed=9)
        b = minibatch_kmeans(data, 4, batch_size=64, iterations=100, seed=9)
        np.testing.assert_array_equal(a.centroids, b.centroids)

    def test_row_order_does_not_matter(self, rng):
        data = FeatureSet(rng.normal(size=(120, 3)))
        shuffled = FeatureSet(data.vectors[rng.permutation(120)])
        a = minibatch_kmeans(data, 5, batch_size=32, iterations=50, seed=2)
        b = minibatch_kmeans(shuffled, 5, batch_size=32, iterations=50, seed=2)
        np.testing.assert_array_equal(a.centroids, b.centroids)

    def test_distinct_centroids_after_fit(self, rng):
        data = FeatureSet(rng.normal(size=(200, 4)))
        model = minibatch_kmeans(data, 6, batch_size=64, iterations=80, seed=5)
        k = model.k
        for i in range(k):
            for j in range(i + 1, k):
                assert np.abs(model.centroids[i] - model.centroids[j]).max() > 1e-12

    def test_too_few_points(self):
        with pytest.raises(InsufficientDataError):
            minibatch_kmeans(FeatureSet(np.ones((2, 2))), 3)


class TestAssign:
    def test_point_at_centroid(self):
        model = ClusterModel(np.array([[0.0, 0.0], [5.0, 0.0], [2.0, 2.0]]))
        data = FeatureSet(np.array([[2.0, 2.0]]))
        assert assign(model, data).tolist() == [2]

    def test_tie_goes_to_lowest_index(self):
        model = ClusterModel(np.array([[1.0, 0.0], [9.0, 9.0], [8.0, 8.0], [-1.0, 0.0]]))
        data = FeatureSet(np.array([[0.0, 0.0]]))  # equidistant to 0 and 3
        assert assign(model, data).tolist() == [0]

    def test_blob_points_assign_to_their_blob(self):
        data = blob_set(n_classes=3, points=300, dim=4)
        model = minibatch_kmeans(data, 3, batch_size=128, iterations=200, seed=1)
        idx = assign(model, data)
        agreement = 0
        for j in range(3):
            block = idx[data.labels == j]
            counts = np.bincount(block, minlength=3)
            agreement += counts.max()
        assert agreement >= 0.99 * data.n

    def test_dimension_mismatch(self):
        model = ClusterModel(np.zeros((2, 3)))
        with pytest.raises(DimensionMismatchError):
            assign(model, FeatureSet(np.zeros((1, 2))))


class TestBuildHistograms:
    def test_identical_sets_identical_histograms(self, rng):
        data = FeatureSet(rng.normal(size=(100, 3)))
        model = minibatch_kmeans(data, 5, batch_size=32, iterations=50, seed=0)
        pair = build_histograms(data, data, model)
        np.testing.assert_array_equal(pair.p_hist.weights, pair.q_hist.weights)

    def test_histograms_sum_to_one_with_empty_clusters(self, rng):
        data = FeatureSet(rng.normal(size=(30, 2)))
        # more clusters than occupied regions guarantees empties downstream
        model = minibatch_kmeans(data, 10, batch_size=16, iterations=30, seed=0)
        pair = build_histograms(data, data, model)
        assert pair.p_hist.size == 10
        assert abs(pair.p_hist.weights.sum() - 1.0) <= 1e-9
        assert abs(pair.q_hist.weights.sum() - 1.0) <= 1e-9

    def test_generated_confined_to_one_cluster(self):
        data = blob_set(n_classes=5, points=200, dim=8)
        real = data.take(np.arange(data.n))
        generated = data.take(np.flatnonzero(data.labels == 0))
        union = FeatureSet(np.vstack([real.vectors, generated.vectors]))
        model = minibatch_kmeans(union, 5, batch_size=256, iterations=200, seed=4)
        pair = build_histograms(real, generated, model)
        assert max_precision(pair.p_hist, pair.q_hist) == pytest.approx(1.0, abs=1e-9)
        # the generated side occupies one of five balanced clusters
        occupied = pair.q_hist.weights > 0
        assert max_recall(pair.p_hist, pair.q_hist) == pytest.approx(
            pair.p_hist.weights[occupied].sum(), abs=1e-12
        )
        assert max_recall(pair.p_hist, pair.q_hist) == pytest.approx(0.2, abs=0.05)

    def test_half_coverage_mirrors_mode_inventing(self):
        data = gaussian_blobs(10, 150, 16, seed=11)
        real = data.take(np.flatnonzero(data.labels < 5))
        generated = data.take(np.arange(data.n))
        union = FeatureSet(np.vstack([real.vectors, generated.vectors]))
        model = minibatch_kmeans(union, 20, batch_size=512, iterations=300, seed=7)
        pair = build_histograms(real, generated, model)
        assert max_precision(pair.p_hist, pair.q_hist) == pytest.approx(0.5, abs=0.05)


class TestAveragedPrd:
    def test_identical_inputs_reach_the_corner(self, rng):
        data = FeatureSet(rng.normal(size=(200, 4)))
        curve = averaged_prd(data, data, k=8, runs=3, m=11, seed=0)
        mid = 5  # lambda = 1 on the odd grid
        assert curve.precisions[mid] >= 0.98
        assert curve.recalls[mid] >= 0.98

    def test_point_count_matches_resolution(self, rng):
        data = FeatureSet(rng.normal(size=(60, 3)))
        for runs in (1, 4):
            curve = averaged_prd(data, data, k=4, runs=runs, m=33, seed=1)
            assert len(curve) == 33

    def test_disjoint_blobs_collapse_to_origin(self):
        data = blob_set(n_classes=2, points=150, dim=4, separation=20.0)
        real = data.take(np.flatnonzero(data.labels == 0))
        generated = data.take(np.flatnonzero(data.labels == 1))
        curve = averaged_prd(real, generated, k=6, runs=3, m=101, seed=3)
        assert curve.precisions.max() <= 0.05

    def test_averaging_reduces_seed_variance(self):
        data = gaussian_blobs(4, 120, 8, sigma=1.0, separation=8.0, seed=21)
        real = data.take(np.flatnonzero(data.labels < 3))
        generated = data.take(np.flatnonzero(data.labels > 0))

        def spread(runs):
            scores = []
            for seed in range(5):
                curve = averaged_prd(
                    real, generated, k=8, runs=runs, m=101, seed=seed * 1000,
                    batch_size=128, iterations=100,
                )
                scores.append(max_f_beta(curve, 8.0))
            return float(np.std(scores))

        assert spread(10) < spread(1)

    def test_labels_never_influence_the_curve(self):
        data = gaussian_blobs(3, 60, 4, seed=13)
        unlabeled = FeatureSet(data.vectors)
        with_labels = averaged_prd(data, data, k=4, runs=2, m=11, seed=6)
        without = averaged_prd(unlabeled, unlabeled, k=4, runs=2, m=11, seed=6)
        np.testing.assert_array_equal(with_labels.precisions, without.precisions)
        np.testing.assert_array_equal(with_labels.recalls, without.recalls)

    def test_permutation_with_shared_seed_is_invariant(self, rng):
        data = gaussian_blobs(3, 80, 4, seed=5)
        perm = rng.permutation(data.n)
        shuffled_real = data.take(perm)
        curve_a = averaged_prd(data, data, k=5, runs=2, m=21, seed=8)
        curve_b = averaged_prd(shuffled_real, data, k=5, runs=2, m=21, seed=8)
        np.testing.assert_array_equal(curve_a.precisions, curve_b.precisions)
        np.testing.assert_array_equal(curve_a.recalls, curve_b.recalls)

    def test_analysis_summaries_average_per_run(self, rng):
        data = FeatureSet(rng.normal(size=(150, 4)))
        res = clustered_prd_analysis(data, data, k=6, runs=3, m=21, seed=2)
        assert res.runs == 3
        assert res.max_precision == pytest.approx(1.0, abs=1e-9)
        assert res.max_recall == pytest.approx(1.0, abs=1e-9)
        assert res.tv_at_lambda1 == pytest.approx(0.0, abs=1e-9)
