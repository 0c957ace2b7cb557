"""Exact precision-recall mathematics on finite histograms.

Given a reference distribution P and a candidate distribution Q over the same
finite state space, the attainable (precision, recall) pairs form a set that
can be traced by sweeping the slope lambda of lines precision = lambda * recall:

    precision(lambda) = sum_w min(lambda * P(w), Q(w))
    recall(lambda)    = sum_w min(P(w), Q(w) / lambda)

Feasibility of an arbitrary pair (alpha, beta) has an equivalent closed form,
used here as an independent oracle:

    (alpha, beta) attainable  <=>  sum_w min(P(w) / beta, Q(w) / alpha) >= 1

Everything in this module is a pure function of its inputs; distributions are
immutable and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SUPPORT_EPS",
    "MASS_TOL",
    "FEASIBILITY_TOL",
    "LINE_TOL",
    "DEFAULT_RESOLUTION",
    "PrdError",
    "DomainError",
    "DimensionMismatchError",
    "InfeasiblePairError",
    "DiscreteDistribution",
    "PrdPoint",
    "LambdaGrid",
    "PrdCurve",
    "Decomposition",
    "FBetaSummary",
    "alpha_beta",
    "prd_curve",
    "membership_oracle",
    "decompose",
    "max_precision",
    "max_recall",
    "tv_distance",
    "f_beta",
    "max_f_beta",
    "fbeta_summary",
    "interpolate_set",
]

# A state belongs to the support iff its mass exceeds this (guards float dust).
SUPPORT_EPS = 1e-12
# Tolerance on |sum(weights) - 1| for a valid distribution.
MASS_TOL = 1e-9
# Feasibility threshold: (alpha, beta) is attainable iff the witness mass
# sum min(P/beta, Q/alpha) reaches 1 - FEASIBILITY_TOL. Boundary points of the
# exact set must test feasible despite rounding.
FEASIBILITY_TOL = 1e-9
# Tolerance on the line relation precision = lambda * recall along a curve.
LINE_TOL = 1e-9
# Monotonicity slack for float accumulation along a curve.
_MONOTONE_SLACK = 1e-12
# Default angular resolution; odd, so lambda = 1 sits exactly mid-grid and the
# total-variation identity is directly observable on the curve.
DEFAULT_RESOLUTION = 1001

# Entry budget for the (lambda x state) work matrix before chunking kicks in.
_CHUNK_BUDGET = 1 << 24


class PrdError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PrdError, ValueError):
    """A scalar argument or distribution violates its domain contract."""


class DimensionMismatchError(PrdError, ValueError):
    """Two operands are defined over state spaces of different sizes."""


class InfeasiblePairError(PrdError):
    """A (precision, recall) pair outside the attainable set was requested."""


def _as_weight_vector(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1:
        raise DomainError(f"weights must be one-dimensional, got shape {w.shape}")
    if w.size < 1:
        raise DomainError("a distribution needs at least one state")
    if not np.all(np.isfinite(w)):
        raise DomainError("weights must be finite")
    if np.any(w < 0):
        raise DomainError("weights must be nonnegative")
    total = float(w.sum())
    if abs(total - 1.0) > MASS_TOL:
        raise DomainError(f"weights must sum to 1 within {MASS_TOL}, got {total!r}")
    w = w.copy()
    w.setflags(write=False)
    return w


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Normalized histogram over a finite state space.

    Weights are validated on construction: nonnegative, finite, summing to 1
    within ``MASS_TOL``. The stored array is read-only.
    """

    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _as_weight_vector(self.weights))

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @property
    def support(self) -> np.ndarray:
        """Boolean mask of states with mass above ``SUPPORT_EPS``."""
        return self.weights > SUPPORT_EPS

    @classmethod
    def uniform(cls, size: int) -> "DiscreteDistribution":
        if size < 1:
            raise DomainError("size must be >= 1")
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, index: int, size: int) -> "DiscreteDistribution":
        if size < 1:
            raise DomainError("size must be >= 1")
        if not 0 <= index < size:
            raise DomainError(f"index {index} out of range for size {size}")
        w = np.zeros(size)
        w[index] = 1.0
        return cls(w)

    @classmethod
    def normalized(cls, values) -> "DiscreteDistribution":
        """Rescale nonnegative values (e.g. counts) to total mass 1."""
        v = np.asarray(values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise DomainError("values must be a nonempty one-dimensional array")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise DomainError("values must be finite and nonnegative")
        total = v.sum()
        if total <= 0:
            raise DomainError("values must have positive total mass")
        return cls(v / total)


@dataclass(frozen=True)
class PrdPoint:
    """One attainable (precision, recall) pair.

    Both coordinates live in [0, 1], and precision is zero exactly when recall
    is zero; (0, 0) is the only pair touching the boundary of positivity.
    """

    precision: float
    recall: float

    def __post_init__(self):
        p, r = self.precision, self.recall
        if not (math.isfinite(p) and math.isfinite(r)):
            raise DomainError("precision and recall must be finite")
        if not (0.0 <= p <= 1.0 and 0.0 <= r <= 1.0):
            raise DomainError(f"({p!r}, {r!r}) outside the unit square")
        if (p == 0.0) != (r == 0.0):
            raise DomainError(
                f"precision and recall may only vanish together, got ({p!r}, {r!r})"
            )


@dataclass(frozen=True, eq=False)
class LambdaGrid:
    """Equiangular grid of line slopes lambda_i = tan((i+1)/(m+1) * pi/2).

    The grid is symmetric under inversion: lambdas[i] * lambdas[m-1-i] = 1.
    """

    resolution: int
    lambdas: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = self.resolution
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise DomainError(f"resolution must be a positive integer, got {m!r}")
        object.__setattr__(self, "resolution", int(m))
        angles = np.arange(1, m + 1, dtype=np.float64) / (m + 1) * (np.pi / 2)
        lam = np.tan(angles)
        if np.any(np.diff(lam) <= 0):
            raise DomainError(f"grid of resolution {m} is not strictly increasing")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    def __len__(self) -> int:
        return self.resolution


@dataclass(frozen=True, eq=False)
class PrdCurve:
    """Maximal (precision, recall) pairs along an equiangular slope grid.

    precision[i] = lambdas[i] * recall[i] within ``LINE_TOL``; precision is
    nondecreasing and recall nonincreasing along the grid. Pointwise means of
    curves on the same grid satisfy the same invariants, so averaged curves
    are represented by this type too.
    """

    grid: LambdaGrid
    precisions: np.ndarray
    recalls: np.ndarray

    def __post_init__(self):
        prec = np.asarray(self.precisions, dtype=np.float64)
        rec = np.asarray(self.recalls, dtype=np.float64)
        m = self.grid.resolution
        if prec.shape != (m,) or rec.shape != (m,):
            raise DimensionMismatchError(
                f"curve arrays must have shape ({m},), got {prec.shape} and {rec.shape}"
            )
        for name, arr in (("precision", prec), ("recall", rec)):
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"{name} values must be finite")
            if arr.min() < 0.0 or arr.max() > 1.0:
                raise DomainError(f"{name} values must lie in [0, 1]")
        line_err = np.abs(prec - self.grid.lambdas * rec)
        if line_err.max() > LINE_TOL:
            raise DomainError(
                f"precision != lambda * recall (max error {line_err.max():.3e})"
            )
        if np.any(np.diff(prec) < -_MONOTONE_SLACK):
            raise DomainError("precision must be nondecreasing along the grid")
        if np.any(np.diff(rec) > _MONOTONE_SLACK):
            raise DomainError("recall must be nonincreasing along the grid")
        prec = prec.copy()
        rec = rec.copy()
        prec.setflags(write=False)
        rec.setflags(write=False)
        object.__setattr__(self, "precisions", prec)
        object.__setattr__(self, "recalls", rec)

    def __len__(self) -> int:
        return self.grid.resolution

    def point(self, i: int) -> PrdPoint:
        return PrdPoint(float(self.precisions[i]), float(self.recalls[i]))

    @property
    def points(self) -> list[PrdPoint]:
        return [self.point(i) for i in range(len(self))]


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Witness for an attainable pair: P = beta*mu + (1-beta)*nu_p and
    Q = alpha*mu + (1-alpha)*nu_q, elementwise."""

    alpha: float
    beta: float
    mu: DiscreteDistribution
    nu_p: DiscreteDistribution
    nu_q: DiscreteDistribution


@dataclass(frozen=True)
class FBetaSummary:
    """Pair of weighted-harmonic summaries distilled from one curve:
    the maximum F_beta (recall-leaning for beta > 1) and the maximum
    F_{1/beta} (the precision-leaning mirror)."""

    beta_weight: float
    f_beta_max: float
    f_beta_inv_max: float


def _check_same_size(p: DiscreteDistribution, q: DiscreteDistribution) -> None:
    if p.size != q.size:
        raise DimensionMismatchError(
            f"distributions live on different state spaces: {p.size} vs {q.size}"
        )


def _check_unit_interval(name: str, value: float) -> float:
    v = float(value)
    if not math.isfinite(v) or not (0.0 < v <= 1.0):
        raise DomainError(f"{name} must lie in (0, 1], got {value!r}")
    return v


def alpha_beta(lam: float, p: DiscreteDistribution, q: DiscreteDistribution) -> PrdPoint:
    """Maximal (precision, recall) pair on the line precision = lam * recall.

    precision = sum_w min(lam * P(w), Q(w)),  recall = sum_w min(P(w), Q(w)/lam).
    """
    _check_same_size(p, q)
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"lambda must be positive and finite, got {lam!r}")
    precision = float(np.minimum(lam * p.weights, q.weights).sum())
    recall = float(np.minimum(p.weights, q.weights / lam).sum())
    return PrdPoint(min(precision, 1.0), min(recall, 1.0))


def prd_curve(
    p: DiscreteDistribution, q: DiscreteDistribution, m: int = DEFAULT_RESOLUTION
) -> PrdCurve:
    """Sweep the equiangular grid of resolution m and collect alpha_beta pairs."""
    _check_same_size(p, q)
    grid = LambdaGrid(m)
    n = p.size
    precisions = np.empty(grid.resolution)
    recalls = np.empty(grid.resolution)
    step = max(1, _CHUNK_BUDGET // max(n, 1))
    for start in range(0, grid.resolution, step):
        lam = grid.lambdas[start : start + step, None]
        precisions[start : start + step] = np.minimum(
            lam * p.weights[None, :], q.weights[None, :]
        ).sum(axis=1)
        recalls[start : start + step] = np.minimum(
            p.weights[None, :], q.weights[None, :] / lam
        ).sum(axis=1)
    np.clip(precisions, 0.0, 1.0, out=precisions)
    np.clip(recalls, 0.0, 1.0, out=recalls)
    return PrdCurve(grid, precisions, recalls)


def membership_oracle(
    alpha: float, beta: float, p: DiscreteDistribution, q: DiscreteDistribution
) -> bool:
    """Exact feasibility test for the pair (alpha, beta), independent of the
    curve sweep: attainable iff sum_w min(P(w)/beta, Q(w)/alpha) reaches 1."""
    _check_same_size(p, q)
    alpha = _check_unit_interval("alpha", alpha)
    beta = _check_unit_interval("beta", beta)
    z = float(np.minimum(p.weights / beta, q.weights / alpha).sum())
    return z >= 1.0 - FEASIBILITY_TOL


def decompose(
    alpha: float, beta: float, p: DiscreteDistribution, q: DiscreteDistribution
) -> Decomposition:
    """Construct the canonical mixture witness for an attainable (alpha, beta).

    mu is the maximal-mass witness min(P/beta, Q/alpha), rescaled by its total
    to an exact distribution; the residuals follow as
    nu_p = (P - beta*mu) / (1 - beta) and nu_q = (Q - alpha*mu) / (1 - alpha).
    When a coefficient is 1 its residual is unconstrained; mu is returned to
    keep the output deterministic.
    """
    if not membership_oracle(alpha, beta, p, q):
        raise InfeasiblePairError(
            f"(alpha={alpha!r}, beta={beta!r}) is not attainable for these distributions"
        )
    alpha = float(alpha)
    beta = float(beta)
    raw = np.minimum(p.weights / beta, q.weights / alpha)
    mu = DiscreteDistribution(raw / raw.sum())

    def residual(total: np.ndarray, coeff: float) -> DiscreteDistribution:
        res = (total - coeff * mu.weights) / (1.0 - coeff)
        # Oracle slack can leave float dust of order FEASIBILITY_TOL below zero.
        res = np.maximum(res, 0.0)
        return DiscreteDistribution(res / res.sum())

    nu_p = mu if beta == 1.0 else residual(p.weights, beta)
    nu_q = mu if alpha == 1.0 else residual(q.weights, alpha)
    return Decomposition(alpha=alpha, beta=beta, mu=mu, nu_p=nu_p, nu_q=nu_q)


def max_precision(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Largest attainable precision: the Q-mass of P's support."""
    _check_same_size(p, q)
    # clamp float dust: a full-support sum may land one ulp above 1
    return min(1.0, float(q.weights[p.support].sum()))


def max_recall(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Largest attainable recall: the P-mass of Q's support.

    Delegates to ``max_precision`` with the arguments swapped, so the duality
    max_recall(P, Q) == max_precision(Q, P) holds exactly.
    """
    return max_precision(q, p)


def tv_distance(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Total variation distance sum_w (P(w) - Q(w))^+.

    Relates to the curve at lambda = 1: precision(1) = recall(1) = 1 - tv.
    """
    _check_same_size(p, q)
    return float(np.maximum(p.weights - q.weights, 0.0).sum())


def f_beta(precision: float, recall: float, beta_weight: float) -> float:
    """Weighted harmonic summary (1 + b^2) * p * r / (b^2 * p + r).

    beta_weight > 1 favors recall, < 1 favors precision. Defined as 0 when
    both inputs vanish (the limit along precision = recall).
    """
    b = float(beta_weight)
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"beta_weight must be positive and finite, got {beta_weight!r}")
    p = float(precision)
    r = float(recall)
    for name, v in (("precision", p), ("recall", r)):
        if not math.isfinite(v) or not (0.0 <= v <= 1.0):
            raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
    denom = b * b * p + r
    if denom <= 0.0:
        return 0.0
    return (1.0 + b * b) * p * r / denom


def max_f_beta(curve: PrdCurve, beta_weight: float) -> float:
    """Maximum of f_beta over the points of a curve."""
    b = float(beta_weight)
    if not math.isfinite(b) or b <= 0.0:
        raise DomainError(f"beta_weight must be positive and finite, got {beta_weight!r}")
    if len(curve) < 1:
        raise DomainError("curve must contain at least one point")
    b2 = b * b
    prec, rec = curve.precisions, curve.recalls
    denom = b2 * prec + rec
    safe = np.where(denom > 0.0, denom, 1.0)
    vals = np.where(denom > 0.0, (1.0 + b2) * prec * rec / safe, 0.0)
    return float(vals.max())


def fbeta_summary(curve: PrdCurve, beta_weight: float = 8.0) -> FBetaSummary:
    """Distill a curve into its (max F_beta, max F_{1/beta}) pair."""
    return FBetaSummary(
        beta_weight=float(beta_weight),
        f_beta_max=max_f_beta(curve, beta_weight),
        f_beta_inv_max=max_f_beta(curve, 1.0 / float(beta_weight)),
    )


def interpolate_set(curve: PrdCurve) -> list[PrdPoint]:
    """Boundary polygon of the attainable region approximated by the curve.

    The region is the union over grid lambdas of the segments from the origin
    to (precision(lambda), recall(lambda)); its boundary is the origin followed
    by the curve points in grid order. Disjoint supports collapse the region to
    the single point (0, 0).
    """
    if len(curve) < 1:
        raise DomainError("curve must contain at least one point")
    origin = PrdPoint(0.0, 0.0)
    if float(curve.precisions.max()) <= 0.0:
        return [origin]
    return [origin, *curve.points]
