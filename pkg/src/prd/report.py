"""Curve reports: the JSON + CSV artifacts emitted by the command-line tool.

A report wraps one computed curve with its exact summary statistics and
enough metadata (parameters, seeds, input digests) to reproduce the run
bit-for-bit. All serialization here is deterministic: no timestamps, sorted
keys, fixed float formatting.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .core import (
    LINE_TOL,
    DiscreteDistribution,
    PrdCurve,
    PrdError,
    max_f_beta,
)

__all__ = [
    "SCHEMA",
    "ReportFormatError",
    "HistogramFormatError",
    "NormalizationError",
    "format_sig9",
    "sha256_file",
    "build_report",
    "write_report_json",
    "write_curve_csv",
    "load_report",
    "validate_report",
    "curve_from_report",
    "load_histogram",
]

SCHEMA = "prd-curve-report/v1"

CSV_HEADER = "lambda,precision,recall"

_MONOTONE_SLACK = 1e-12

# Tolerance on |sum(weights) - 1| before a histogram file needs --normalize.
HISTOGRAM_MASS_TOL = 1e-6


class ReportFormatError(PrdError):
    """A report file is missing fields or fails its own integrity checks."""


class HistogramFormatError(PrdError):
    """A histogram JSON file is malformed."""


class NormalizationError(PrdError):
    """Histogram weights do not sum to 1 and normalization was not requested."""


def format_sig9(value: float) -> str:
    """Plain decimal notation with 9 significant digits."""
    return np.format_float_positional(
        float(value), precision=9, unique=False, fractional=False, trim="0"
    )


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _fbeta_table(curve: PrdCurve, betas: list[float]) -> dict[str, float]:
    table: dict[str, float] = {}
    for b in betas:
        table[f"{float(b):g}"] = max_f_beta(curve, b)
    return table


def build_report(
    command: str,
    curve: PrdCurve,
    max_precision: float,
    max_recall: float,
    tv_at_lambda1: float,
    inputs: list[dict],
    params: dict,
    extra_betas: list[float] | None = None,
    **extra_fields,
) -> dict:
    """Assemble the report dictionary for one curve."""
    betas = [8.0, 0.125]
    for b in extra_betas or []:
        if float(b) not in betas:
            betas.append(float(b))
    report = {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "inputs": inputs,
        "lambdas": [float(v) for v in curve.grid.lambdas],
        "precision": [float(v) for v in curve.precisions],
        "recall": [float(v) for v in curve.recalls],
        "max_precision": float(max_precision),
        "max_recall": float(max_recall),
        "tv_at_lambda1": float(tv_at_lambda1),
        "f_beta": _fbeta_table(curve, betas),
    }
    report.update(extra_fields)
    validate_report(report)
    return report


def write_report_json(path: str | Path, report: dict) -> None:
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def write_curve_csv(path: str | Path, report_or_curve) -> None:
    """Write `lambda,precision,recall` rows at 9 significant digits."""
    if isinstance(report_or_curve, PrdCurve):
        lambdas = report_or_curve.grid.lambdas
        prec = report_or_curve.precisions
        rec = report_or_curve.recalls
    else:
        lambdas = report_or_curve["lambdas"]
        prec = report_or_curve["precision"]
        rec = report_or_curve["recall"]
    lines = [CSV_HEADER]
    for lam, p, r in zip(lambdas, prec, rec):
        lines.append(f"{format_sig9(lam)},{format_sig9(p)},{format_sig9(r)}")
    Path(path).write_text("\n".join(lines) + "\n")


def validate_report(report: dict) -> None:
    """Re-check a report's structural integrity.

    Every row must satisfy precision = lambda * recall, the columns must be
    monotone in the right directions, and all values must sit in [0, 1].
    """
    if not isinstance(report, dict):
        raise ReportFormatError("report must be a JSON object")
    if report.get("schema") != SCHEMA:
        raise ReportFormatError(f"unknown schema {report.get('schema')!r}")
    for key in ("lambdas", "precision", "recall"):
        if key not in report or not isinstance(report[key], list):
            raise ReportFormatError(f"missing or non-array field {key!r}")
    lam = np.asarray(report["lambdas"], dtype=np.float64)
    prec = np.asarray(report["precision"], dtype=np.float64)
    rec = np.asarray(report["recall"], dtype=np.float64)
    if lam.size < 1 or lam.shape != prec.shape or lam.shape != rec.shape:
        raise ReportFormatError("lambdas/precision/recall must be nonempty and equal length")
    if not np.all(np.isfinite(lam)) or np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
        raise ReportFormatError("lambdas must be positive, finite, strictly increasing")
    for name, arr in (("precision", prec), ("recall", rec)):
        if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
            raise ReportFormatError(f"{name} values must lie in [0, 1]")
    if np.abs(prec - lam * rec).max() > LINE_TOL:
        raise ReportFormatError("rows violate precision = lambda * recall")
    if np.any(np.diff(prec) < -_MONOTONE_SLACK):
        raise ReportFormatError("precision column must be nondecreasing")
    if np.any(np.diff(rec) > _MONOTONE_SLACK):
        raise ReportFormatError("recall column must be nonincreasing")
    for key in ("max_precision", "max_recall", "tv_at_lambda1"):
        v = report.get(key)
        if not isinstance(v, (int, float)) or not (0.0 <= float(v) <= 1.0):
            raise ReportFormatError(f"field {key!r} must be a number in [0, 1]")


def load_report(path: str | Path) -> dict:
    try:
        report = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ReportFormatError(f"cannot read report {path}: {exc}") from exc
    validate_report(report)
    return report


def curve_from_report(report: dict) -> PrdCurve:
    """Rebuild the curve object from a validated report."""
    lam = np.asarray(report["lambdas"], dtype=np.float64)
    grid = _StoredGrid(lam)
    return PrdCurve(
        grid,
        np.asarray(report["precision"], dtype=np.float64),
        np.asarray(report["recall"], dtype=np.float64),
    )


class _StoredGrid:
    """Grid stand-in carrying lambdas loaded from a report.

    Reports persist the grid values rather than only the resolution, so a
    reloaded curve reuses the stored floats verbatim instead of recomputing
    the tangent grid.
    """

    def __init__(self, lambdas: np.ndarray):
        lam = np.asarray(lambdas, dtype=np.float64).copy()
        lam.setflags(write=False)
        self.lambdas = lam
        self.resolution = int(lam.size)

    def __len__(self) -> int:
        return self.resolution


def load_histogram(path: str | Path, normalize: bool = False) -> DiscreteDistribution:
    """Read a `{"size": k, "weights": [...]}` histogram file.

    Weight totals within ``HISTOGRAM_MASS_TOL`` of 1 are accepted and rescaled
    exactly; anything further off requires ``normalize=True``.
    """
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise HistogramFormatError(f"cannot read histogram {path}: {exc}") from exc
    if not isinstance(doc, dict) or "size" not in doc or "weights" not in doc:
        raise HistogramFormatError(f"{path}: histogram needs 'size' and 'weights' fields")
    weights = doc["weights"]
    if not isinstance(weights, list) or not isinstance(doc["size"], int):
        raise HistogramFormatError(f"{path}: 'size' must be an integer and 'weights' an array")
    if doc["size"] != len(weights) or doc["size"] < 1:
        raise HistogramFormatError(
            f"{path}: size {doc['size']} does not match {len(weights)} weights"
        )
    w = np.asarray(weights, dtype=np.float64)
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise HistogramFormatError(f"{path}: weights must be finite and nonnegative")
    total = float(w.sum())
    if total <= 0:
        raise HistogramFormatError(f"{path}: weights must have positive total mass")
    if abs(total - 1.0) > HISTOGRAM_MASS_TOL and not normalize:
        raise NormalizationError(
            f"{path}: weights sum to {total!r}; pass --normalize to rescale"
        )
    return DiscreteDistribution(w / total)
