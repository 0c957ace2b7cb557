"""Quantize embedding vectors into a shared finite state space.

Real and generated feature vectors are pooled, clustered with mini-batch
k-means, and reduced to a pair of histograms over the cluster assignments.
Because the clustering is randomized, curves are averaged over repeated runs
with derived seeds.

Determinism contract: for a fixed seed every function here is a deterministic
function of the *multiset* of input points; row order never matters because
fitting canonicalizes the point order before any seeded sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import (
    DEFAULT_RESOLUTION,
    DimensionMismatchError,
    DiscreteDistribution,
    DomainError,
    LambdaGrid,
    PrdCurve,
    PrdError,
    max_precision,
    max_recall,
    prd_curve,
    tv_distance,
)

__all__ = [
    "DEFAULT_K",
    "DEFAULT_RUNS",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_ITERATIONS",
    "InsufficientDataError",
    "FeatureSet",
    "ClusterModel",
    "HistogramPair",
    "minibatch_kmeans",
    "assign",
    "build_histograms",
    "averaged_prd",
    "ClusteredPrdResult",
    "clustered_prd_analysis",
]

DEFAULT_K = 20
DEFAULT_RUNS = 10
DEFAULT_BATCH_SIZE = 1024
DEFAULT_ITERATIONS = 500

# Row budget for pairwise-distance work matrices before chunking.
_DIST_BUDGET = 1 << 23


class InsufficientDataError(PrdError):
    """Fewer data points than requested clusters."""


@dataclass(frozen=True, eq=False)
class FeatureSet:
    """N x D matrix of embedding vectors with optional integer class labels."""

    vectors: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.float64)
        if v.ndim != 2:
            raise DomainError(f"vectors must be an N x D matrix, got shape {v.shape}")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise DomainError(f"vectors must be nonempty, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("vectors must be finite")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        if self.labels is not None:
            lab = np.asarray(self.labels)
            if not np.issubdtype(lab.dtype, np.integer):
                raise DomainError("labels must be integers")
            if lab.shape != (v.shape[0],):
                raise DomainError(
                    f"labels must have shape ({v.shape[0]},), got {lab.shape}"
                )
            lab = lab.astype(np.int64)
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def take(self, indices) -> "FeatureSet":
        """Subset by row indices, carrying labels along."""
        idx = np.asarray(indices)
        lab = None if self.labels is None else self.labels[idx]
        return FeatureSet(self.vectors[idx], lab)


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """k centroids in feature space; points map to their nearest centroid."""

    centroids: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.centroids, dtype=np.float64)
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise DomainError(f"centroids must be a k x D matrix, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise DomainError("centroids must be finite")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "centroids", c)

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    @property
    def dim(self) -> int:
        return int(self.centroids.shape[1])


@dataclass(frozen=True, eq=False)
class HistogramPair:
    """Histograms of the real (p) and generated (q) assignments over one model."""

    p_hist: DiscreteDistribution
    q_hist: DiscreteDistribution

    def __post_init__(self):
        if self.p_hist.size != self.q_hist.size:
            raise DimensionMismatchError(
                f"histograms differ in size: {self.p_hist.size} vs {self.q_hist.size}"
            )


def _nearest(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Index of the nearest centroid per point (squared Euclidean).

    Uses the direct (x - c)^2 form so that exact ties resolve to the lowest
    centroid index, chunking rows to bound memory.
    """
    n = points.shape[0]
    k = centroids.shape[0]
    out = np.empty(n, dtype=np.int64)
    step = max(1, _DIST_BUDGET // max(k * points.shape[1], 1))
    for start in range(0, n, step):
        chunk = points[start : start + step]
        d2 = ((chunk[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        out[start : start + step] = np.argmin(d2, axis=1)
    return out


def _kmeans_pp(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each next centroid sampled with probability
    proportional to its squared distance from the chosen set."""
    n = points.shape[0]
    chosen = np.empty((k, points.shape[1]))
    first = int(rng.integers(n))
    chosen[0] = points[first]
    d2 = ((points - chosen[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            # Remaining points duplicate the chosen set; any pick is valid.
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        chosen[j] = points[idx]
        d2 = np.minimum(d2, ((points - chosen[j]) ** 2).sum(axis=1))
    return chosen


def minibatch_kmeans(
    data: FeatureSet,
    k: int,
    batch_size: int = DEFAULT_BATCH_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
) -> ClusterModel:
    """Fit k centroids by mini-batch k-means.

    k-means++ initialization from ``seed``, then ``iterations`` rounds of
    sampling ``batch_size`` points with replacement (the full data, in order,
    when batch_size >= N), assigning each to its nearest centroid, and updating
    each touched centroid as the running mean of every point assigned to it so
    far (learning rate 1/count). Deterministic given (points, k, batch_size,
    iterations, seed); input row order is irrelevant.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if batch_size < 1:
        raise DomainError(f"batch_size must be >= 1, got {batch_size}")
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    n = data.n
    if n < k:
        raise InsufficientDataError(f"need at least k={k} points, got {n}")
    # Canonical row order: the fit depends on the multiset of points only.
    order = np.lexsort(data.vectors.T[::-1])
    points = np.ascontiguousarray(data.vectors[order])
    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp(points, k, rng)
    counts = np.zeros(k)
    bs = min(batch_size, n)
    full_batch = bs == n
    for _ in range(iterations):
        if full_batch:
            batch = points
        else:
            batch = points[rng.integers(0, n, size=bs)]
        # Nearest centroid via ||x||^2 - 2 x.c + ||c||^2; the x^2 term is
        # constant per row and dropped. Fit-internal only; `assign` uses the
        # tie-stable direct form.
        d2 = (centroids * centroids).sum(axis=1)[None, :] - 2.0 * (batch @ centroids.T)
        nearest = np.argmin(d2, axis=1)
        batch_counts = np.bincount(nearest, minlength=k).astype(np.float64)
        sums = np.zeros_like(centroids)
        np.add.at(sums, nearest, batch)
        touched = batch_counts > 0
        new_counts = counts + batch_counts
        centroids[touched] = (
            counts[touched, None] * centroids[touched] + sums[touched]
        ) / new_counts[touched, None]
        counts = new_counts
    return ClusterModel(centroids)


def assign(model: ClusterModel, data: FeatureSet) -> np.ndarray:
    """Map each point to its nearest centroid; ties go to the lowest index."""
    if data.dim != model.dim:
        raise DimensionMismatchError(
            f"data dimension {data.dim} does not match model dimension {model.dim}"
        )
    return _nearest(data.vectors, model.centroids)


def build_histograms(
    real: FeatureSet, generated: FeatureSet, model: ClusterModel
) -> HistogramPair:
    """Histogram both sample sets over the model's clusters.

    Clusters empty in both histograms keep mass 0 on both sides, preserving
    the state-space size k. The model is expected to have been fitted on the
    union of both sets; that is the caller's responsibility.
    """
    k = model.k
    p_counts = np.bincount(assign(model, real), minlength=k)
    q_counts = np.bincount(assign(model, generated), minlength=k)
    return HistogramPair(
        p_hist=DiscreteDistribution(p_counts / real.n),
        q_hist=DiscreteDistribution(q_counts / generated.n),
    )


def _histogram_runs(
    real: FeatureSet,
    generated: FeatureSet,
    k: int,
    runs: int,
    seed: int,
    batch_size: int,
    iterations: int,
) -> Iterator[HistogramPair]:
    if real.dim != generated.dim:
        raise DimensionMismatchError(
            f"feature dimensions differ: {real.dim} vs {generated.dim}"
        )
    if runs < 1:
        raise DomainError(f"runs must be >= 1, got {runs}")
    union = FeatureSet(np.vstack([real.vectors, generated.vectors]))
    if union.n < k:
        raise InsufficientDataError(
            f"need at least k={k} points in the union, got {union.n}"
        )
    for r in range(1, runs + 1):
        model = minibatch_kmeans(
            union, k, batch_size=batch_size, iterations=iterations, seed=seed + r
        )
        yield build_histograms(real, generated, model)


@dataclass(frozen=True, eq=False)
class ClusteredPrdResult:
    """Averages over the clustering runs: the pointwise-mean curve plus the
    mean exact summary statistics of the per-run histogram pairs."""

    curve: PrdCurve
    max_precision: float
    max_recall: float
    tv_at_lambda1: float
    runs: int


def clustered_prd_analysis(
    real: FeatureSet,
    generated: FeatureSet,
    k: int = DEFAULT_K,
    runs: int = DEFAULT_RUNS,
    m: int = DEFAULT_RESOLUTION,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
) -> ClusteredPrdResult:
    """Cluster ``runs`` times with seeds seed+1..seed+runs and average.

    Curves are averaged pointwise per grid index (the grid is shared across
    runs), so the mean curve keeps the line relation and monotonicity.
    """
    grid = LambdaGrid(m)
    sum_prec = np.zeros(grid.resolution)
    sum_rec = np.zeros(grid.resolution)
    sum_maxp = sum_maxr = sum_tv = 0.0
    count = 0
    for pair in _histogram_runs(real, generated, k, runs, seed, batch_size, iterations):
        curve = prd_curve(pair.p_hist, pair.q_hist, m)
        sum_prec += curve.precisions
        sum_rec += curve.recalls
        sum_maxp += max_precision(pair.p_hist, pair.q_hist)
        sum_maxr += max_recall(pair.p_hist, pair.q_hist)
        sum_tv += tv_distance(pair.p_hist, pair.q_hist)
        count += 1
    return ClusteredPrdResult(
        curve=PrdCurve(grid, sum_prec / count, sum_rec / count),
        max_precision=sum_maxp / count,
        max_recall=sum_maxr / count,
        tv_at_lambda1=sum_tv / count,
        runs=count,
    )


def averaged_prd(
    real: FeatureSet,
    generated: FeatureSet,
    k: int = DEFAULT_K,
    runs: int = DEFAULT_RUNS,
    m: int = DEFAULT_RESOLUTION,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
) -> PrdCurve:
    """Pointwise mean curve over ``runs`` independent clustering runs."""
    return clustered_prd_analysis(
        real,
        generated,
        k=k,
        runs=runs,
        m=m,
        seed=seed,
        batch_size=batch_size,
        iterations=iterations,
    ).curve
