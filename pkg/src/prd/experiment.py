"""Mode-dropping / mode-inventing experiment harness.

Fixes a reference sample P to the first ``ref_classes`` classes of a labeled
feature set and sweeps candidate samples Q_i over the first i classes,
i = 1..steps. Dropping classes from Q shows up as lost recall; adding classes
beyond the reference shows up as lost precision. P and every Q_i draw from
disjoint halves of a seeded per-class split, so no row is shared.

Also hosts the synthetic Gaussian-blob generator used by the demos and the
desk-scale experiments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_ITERATIONS,
    DEFAULT_K,
    DEFAULT_RUNS,
    ClusteredPrdResult,
    FeatureSet,
    clustered_prd_analysis,
)
from .core import DEFAULT_RESOLUTION, DomainError, PrdError

__all__ = [
    "MissingClassError",
    "gaussian_blobs",
    "class_split",
    "ModeStepResult",
    "mode_experiment",
]


class MissingClassError(PrdError):
    """The labeled input does not provide the classes the experiment needs."""

    def __init__(self, missing: list[int], message: str):
        super().__init__(message)
        self.missing = missing


def gaussian_blobs(
    n_classes: int,
    points_per_class: int,
    dim: int,
    sigma: float = 1.0,
    separation: float = 24.0,
    seed: int = 0,
) -> FeatureSet:
    """Balanced, well-separated isotropic Gaussian classes.

    Class j is centered at separation * e_j (orthogonal axes), so centers sit
    separation * sqrt(2) apart; with the default separation of 24 sigma that
    is about 34 within-class standard deviations.
    """
    if n_classes < 1 or points_per_class < 1 or dim < 1:
        raise DomainError("n_classes, points_per_class and dim must be >= 1")
    if n_classes > dim:
        raise DomainError(
            f"orthogonal placement needs dim >= n_classes, got {dim} < {n_classes}"
        )
    if sigma <= 0 or separation <= 0:
        raise DomainError("sigma and separation must be positive")
    rng = np.random.default_rng(seed)
    centers = np.eye(n_classes, dim) * separation * sigma
    vectors = np.empty((n_classes * points_per_class, dim))
    labels = np.empty(n_classes * points_per_class, dtype=np.int64)
    for j in range(n_classes):
        block = slice(j * points_per_class, (j + 1) * points_per_class)
        vectors[block] = centers[j] + rng.normal(0.0, sigma, (points_per_class, dim))
        labels[block] = j
    return FeatureSet(vectors, labels)


def class_split(
    features: FeatureSet, needed_classes: int, seed: int
) -> tuple[np.ndarray, dict[int, np.ndarray], dict[int, np.ndarray]]:
    """Seeded 50/50 per-class split of a labeled feature set.

    Returns (class_values, reference_indices, candidate_indices) where the
    class values are the first ``needed_classes`` distinct labels in sorted
    order and the two index maps are disjoint row sets per class. Raises
    ``MissingClassError`` when classes are absent or too small to split.
    """
    if features.labels is None:
        raise DomainError("a labeled feature set is required")
    present = np.unique(features.labels)
    if present.size < needed_classes:
        missing = list(range(present.size + 1, needed_classes + 1))
        raise MissingClassError(
            missing,
            f"need {needed_classes} classes, found {present.size}; "
            f"missing class ordinals {missing}",
        )
    classes = present[:needed_classes]
    rng = np.random.default_rng(seed)
    ref_idx: dict[int, np.ndarray] = {}
    cand_idx: dict[int, np.ndarray] = {}
    too_small = [int(c) for c in classes if (features.labels == c).sum() < 2]
    if too_small:
        raise MissingClassError(
            too_small, f"classes {too_small} have fewer than 2 samples and cannot be split"
        )
    for c in classes:
        rows = np.flatnonzero(features.labels == c)
        rows = rows[rng.permutation(rows.size)]
        half = rows.size // 2
        cand_idx[int(c)] = np.sort(rows[:half])
        ref_idx[int(c)] = np.sort(rows[half:])
    return classes, ref_idx, cand_idx


@dataclass(frozen=True, eq=False)
class ModeStepResult:
    """Analysis of Q_i (first i classes) against the fixed reference."""

    step: int
    classes: list[int]
    n_reference: int
    n_candidate: int
    result: ClusteredPrdResult


def mode_experiment(
    features: FeatureSet,
    ref_classes: int = 5,
    steps: int = 10,
    k: int = DEFAULT_K,
    runs: int = DEFAULT_RUNS,
    m: int = DEFAULT_RESOLUTION,
    seed: int = 0,
    batch_size: int = DEFAULT_BATCH_SIZE,
    iterations: int = DEFAULT_ITERATIONS,
) -> list[ModeStepResult]:
    """Run the class sweep and return one averaged analysis per step.

    Step i uses base seed seed + (i-1)*runs so every (step, run) pair draws a
    distinct clustering seed; results are deterministic end to end.
    """
    if ref_classes < 1 or steps < 1:
        raise DomainError("ref_classes and steps must be >= 1")
    classes, ref_idx, cand_idx = class_split(
        features, max(ref_classes, steps), seed
    )
    ref_rows = np.concatenate([ref_idx[int(c)] for c in classes[:ref_classes]])
    reference = features.take(np.sort(ref_rows))
    results = []
    for i in range(1, steps + 1):
        cand_rows = np.concatenate([cand_idx[int(c)] for c in classes[:i]])
        # Split hygiene: the reference and every candidate share no rows.
        assert not np.intersect1d(ref_rows, cand_rows).size
        candidate = features.take(np.sort(cand_rows))
        analysis = clustered_prd_analysis(
            reference,
            candidate,
            k=k,
            runs=runs,
            m=m,
            seed=seed + (i - 1) * runs,
            batch_size=batch_size,
            iterations=iterations,
        )
        results.append(
            ModeStepResult(
                step=i,
                classes=[int(c) for c in classes[:i]],
                n_reference=reference.n,
                n_candidate=candidate.n,
                result=analysis,
            )
        )
    return results
