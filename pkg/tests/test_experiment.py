"""Mode add/drop experiment harness at small scale."""

import numpy as np
import pytest

from prd import DomainError, FeatureSet, MissingClassError, gaussian_blobs, mode_experiment
from prd.experiment import class_split


class TestGaussianBlobs:
    def test_shapes_and_labels(self):
        fs = gaussian_blobs(4, 50, 8, seed=1)
        assert fs.vectors.shape == (200, 8)
        assert np.bincount(fs.labels).tolist() == [50] * 4

    def test_separation(self):
        fs = gaussian_blobs(3, 100, 6, sigma=1.0, separation=24.0, seed=2)
        means = np.array([fs.vectors[fs.labels == j].mean(axis=0) for j in range(3)])
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.linalg.norm(means[i] - means[j]) > 20.0

    def test_deterministic(self):
        a = gaussian_blobs(2, 10, 4, seed=7)
        b = gaussian_blobs(2, 10, 4, seed=7)
        np.testing.assert_array_equal(a.vectors, b.vectors)

    def test_needs_enough_dimensions(self):
        with pytest.raises(DomainError):
            gaussian_blobs(5, 10, 3)


class TestClassSplit:
    def test_halves_are_disjoint_and_cover(self):
        fs = gaussian_blobs(3, 40, 4, seed=3)
        classes, ref_idx, cand_idx = class_split(fs, 3, seed=0)
        assert classes.tolist() == [0, 1, 2]
        for c in classes:
            ref, cand = ref_idx[int(c)], cand_idx[int(c)]
            assert len(np.intersect1d(ref, cand)) == 0
            assert len(ref) + len(cand) == 40
            assert np.array_equal(
                np.sort(np.concatenate([ref, cand])), np.flatnonzero(fs.labels == c)
            )

    def test_missing_classes_listed(self):
        fs = gaussian_blobs(3, 10, 4, seed=3)
        with pytest.raises(MissingClassError) as err:
            class_split(fs, 5, seed=0)
        assert err.value.missing == [4, 5]

    def test_requires_labels(self):
        with pytest.raises(DomainError):
            class_split(FeatureSet(np.ones((4, 2))), 1, seed=0)

    def test_tiny_class_cannot_split(self):
        vectors = np.random.default_rng(0).normal(size=(5, 2))
        fs = FeatureSet(vectors, labels=np.array([0, 0, 0, 0, 1]))
        with pytest.raises(MissingClassError) as err:
            class_split(fs, 2, seed=0)
        assert err.value.missing == [1]


@pytest.fixture(scope="module")
def results():
    fs = gaussian_blobs(6, 120, 8, seed=40)
    return mode_experiment(
        fs, ref_classes=3, steps=6, k=12, runs=3, m=101, seed=5,
        batch_size=128, iterations=120,
    )


class TestModeExperiment:
    def test_one_result_per_step(self, results):
        assert [r.step for r in results] == [1, 2, 3, 4, 5, 6]
        assert results[0].classes == [0]
        assert results[5].classes == [0, 1, 2, 3, 4, 5]

    def test_recall_grows_with_covered_classes(self, results):
        for r in results:
            expected = min(r.step, 3) / 3
            assert r.result.max_recall == pytest.approx(expected, abs=0.1)

    def test_precision_drops_with_invented_classes(self, results):
        for r in results:
            if r.step <= 3:
                assert r.result.max_precision >= 0.9
            else:
                assert r.result.max_precision == pytest.approx(3 / r.step, abs=0.1)

    def test_matched_support_step_scores_high(self, results):
        matched = results[2].result  # step == ref_classes
        assert matched.max_precision >= 0.9
        assert matched.max_recall >= 0.9

    def test_sample_counts(self, results):
        # 120 per class, split 50/50: reference = 3 * 60, candidate_i = 60 * i
        assert results[0].n_reference == 180
        for r in results:
            assert r.n_candidate == 60 * r.step
