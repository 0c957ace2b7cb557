"""Command-line interface.

Subcommands:

    prd compute  REAL.prdf GEN.prdf --out report.json   # cluster + curve
    prd hist     P.json Q.json --out report.json        # exact histogram curve
    prd mode-experiment LABELED.prdf --out DIR          # class add/drop sweep
    prd fbeta    report.json [...] --out scatter.csv    # F-beta summaries
    prd plot     report.json --out curve.svg            # attainable region

Exit codes: 0 ok, 2 parse/usage, 3 dimension mismatch, 4 normalization,
5 missing class. Every failure prints a single `error_code=` line to stderr.
The default seed comes from --seed, else the PRD_SEED environment variable,
else 0.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .clustering import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_ITERATIONS,
    DEFAULT_K,
    DEFAULT_RUNS,
    clustered_prd_analysis,
)
from .core import (
    DEFAULT_RESOLUTION,
    DimensionMismatchError,
    DomainError,
    PrdError,
    max_f_beta,
    max_precision,
    max_recall,
    prd_curve,
    tv_distance,
)
from .experiment import MissingClassError, mode_experiment
from .featurefile import FeatureFileError, read_feature_file
from .report import (
    HistogramFormatError,
    NormalizationError,
    ReportFormatError,
    build_report,
    curve_from_report,
    format_sig9,
    load_histogram,
    load_report,
    sha256_file,
    write_curve_csv,
    write_report_json,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_NORMALIZATION = 4
EXIT_MISSING_CLASS = 5


class _Parser(argparse.ArgumentParser):
    """Argparse variant whose usage errors honor the error-line contract."""

    def error(self, message):
        print(f"error_code={EXIT_PARSE} {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _fail(code: int, message: str) -> int:
    print(f"error_code={code} {message}", file=sys.stderr)
    return code


def _default_seed() -> int:
    raw = os.environ.get("PRD_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _input_digest(path: str) -> dict:
    return {"path": str(path), "sha256": sha256_file(path)}


def _csv_sibling(out_path: str | Path) -> Path:
    return Path(out_path).with_suffix(".csv")


def _read_features(path: str):
    try:
        return read_feature_file(path)
    except FeatureFileError as exc:
        raise FeatureFileError(exc.field, f"{path}: {exc}") from exc


def cmd_compute(args) -> int:
    real = _read_features(args.real)
    generated = _read_features(args.generated)
    if real.dim != generated.dim:
        raise DimensionMismatchError(
            f"feature dimensions differ: {args.real} has D={real.dim}, "
            f"{args.generated} has D={generated.dim}"
        )
    analysis = clustered_prd_analysis(
        real,
        generated,
        k=args.k,
        runs=args.runs,
        m=args.m,
        seed=args.seed,
        batch_size=args.batch_size,
        iterations=args.iterations,
    )
    report = build_report(
        command="compute",
        curve=analysis.curve,
        max_precision=analysis.max_precision,
        max_recall=analysis.max_recall,
        tv_at_lambda1=analysis.tv_at_lambda1,
        inputs=[_input_digest(args.real), _input_digest(args.generated)],
        params={
            "k": args.k,
            "runs": args.runs,
            "m": args.m,
            "seed": args.seed,
            "batch_size": args.batch_size,
            "iterations": args.iterations,
        },
        extra_betas=args.beta,
    )
    write_report_json(args.out, report)
    write_curve_csv(_csv_sibling(args.out), analysis.curve)
    return EXIT_OK


def cmd_hist(args) -> int:
    p = load_histogram(args.p_hist, normalize=args.normalize)
    q = load_histogram(args.q_hist, normalize=args.normalize)
    if p.size != q.size:
        raise DimensionMismatchError(
            f"histogram sizes differ: {args.p_hist} has {p.size}, {args.q_hist} has {q.size}"
        )
    curve = prd_curve(p, q, args.m)
    report = build_report(
        command="hist",
        curve=curve,
        max_precision=max_precision(p, q),
        max_recall=max_recall(p, q),
        tv_at_lambda1=tv_distance(p, q),
        inputs=[_input_digest(args.p_hist), _input_digest(args.q_hist)],
        params={"m": args.m, "normalize": bool(args.normalize)},
        extra_betas=args.beta,
    )
    write_report_json(args.out, report)
    write_curve_csv(_csv_sibling(args.out), curve)
    return EXIT_OK


def cmd_mode_experiment(args) -> int:
    features = _read_features(args.labeled)
    if features.labels is None:
        raise FeatureFileError(
            "flags", f"{args.labeled}: the experiment needs a labeled file"
        )
    steps = mode_experiment(
        features,
        ref_classes=args.ref_classes,
        steps=args.steps,
        k=args.k,
        runs=args.runs,
        m=args.m,
        seed=args.seed,
        batch_size=args.batch_size,
        iterations=args.iterations,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    digest = _input_digest(args.labeled)
    overlay = ["step,lambda,precision,recall"]
    for step in steps:
        report = build_report(
            command="mode-experiment",
            curve=step.result.curve,
            max_precision=step.result.max_precision,
            max_recall=step.result.max_recall,
            tv_at_lambda1=step.result.tv_at_lambda1,
            inputs=[digest],
            params={
                "k": args.k,
                "runs": args.runs,
                "m": args.m,
                "seed": args.seed,
                "ref_classes": args.ref_classes,
                "steps": args.steps,
                "batch_size": args.batch_size,
                "iterations": args.iterations,
            },
            step=step.step,
            step_classes=step.classes,
            n_reference=step.n_reference,
            n_candidate=step.n_candidate,
        )
        stem = f"mode_{step.step:02d}"
        write_report_json(out_dir / f"{stem}.json", report)
        write_curve_csv(out_dir / f"{stem}.csv", step.result.curve)
        curve = step.result.curve
        for lam, p, r in zip(curve.grid.lambdas, curve.precisions, curve.recalls):
            overlay.append(
                f"{step.step},{format_sig9(lam)},{format_sig9(p)},{format_sig9(r)}"
            )
    (out_dir / "overlay.csv").write_text("\n".join(overlay) + "\n")
    return EXIT_OK


def cmd_fbeta(args) -> int:
    beta = args.beta_weight
    if beta <= 0:
        raise DomainError(f"--beta-weight must be positive, got {beta}")
    rows = []
    for path in args.reports:
        report = load_report(path)
        curve = curve_from_report(report)
        rows.append((Path(path).stem, max_f_beta(curve, beta), max_f_beta(curve, 1.0 / beta)))
    lines = ["id,beta,max_f_beta,max_f_inv_beta"]
    for name, fb, fb_inv in rows:
        lines.append(f"{name},{beta:g},{format_sig9(fb)},{format_sig9(fb_inv)}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    if args.plot:
        from .plotting import save_fbeta_scatter

        save_fbeta_scatter(rows, beta, args.plot)
    return EXIT_OK


def cmd_plot(args) -> int:
    report = load_report(args.report)
    curve = curve_from_report(report)
    from .plotting import save_curve_plot

    save_curve_plot(curve, args.out)
    return EXIT_OK


def _add_clustering_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--k", type=int, default=DEFAULT_K, help="number of clusters")
    sub.add_argument("--runs", type=int, default=DEFAULT_RUNS, help="clustering repetitions to average")
    sub.add_argument("--seed", type=int, default=None, help="base random seed (default: $PRD_SEED or 0)")
    sub.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE, help=argparse.SUPPRESS)
    sub.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prd", description="Precision-recall analysis between distributions")
    subs = parser.add_subparsers(dest="command", required=True)

    compute = subs.add_parser("compute", parents=[], help="curve from two feature files")
    compute.add_argument("real", help="reference feature file")
    compute.add_argument("generated", help="candidate feature file")
    _add_clustering_flags(compute)
    compute.add_argument("--m", type=int, default=DEFAULT_RESOLUTION, help="grid resolution")
    compute.add_argument("--beta", type=float, action="append", help="extra F-beta weights for the report")
    compute.add_argument("--out", required=True, help="report JSON path (CSV written alongside)")
    compute.set_defaults(func=cmd_compute)

    hist = subs.add_parser("hist", help="curve from two histogram JSON files")
    hist.add_argument("p_hist", help="reference histogram JSON")
    hist.add_argument("q_hist", help="candidate histogram JSON")
    hist.add_argument("--m", type=int, default=DEFAULT_RESOLUTION, help="grid resolution")
    hist.add_argument("--normalize", action="store_true", help="rescale weights that do not sum to 1")
    hist.add_argument("--beta", type=float, action="append", help="extra F-beta weights for the report")
    hist.add_argument("--out", required=True, help="report JSON path (CSV written alongside)")
    hist.set_defaults(func=cmd_hist)

    mode = subs.add_parser("mode-experiment", help="class add/drop sweep on a labeled feature file")
    mode.add_argument("labeled", help="labeled feature file")
    mode.add_argument("--ref-classes", type=int, default=5, help="classes in the fixed reference")
    mode.add_argument("--steps", type=int, default=10, help="largest class count for the candidate")
    _add_clustering_flags(mode)
    mode.add_argument("--m", type=int, default=DEFAULT_RESOLUTION, help="grid resolution")
    mode.add_argument("--out", required=True, help="output directory")
    mode.set_defaults(func=cmd_mode_experiment)

    fbeta = subs.add_parser("fbeta", help="F-beta summary table for one or more reports")
    fbeta.add_argument("reports", nargs="+", help="report JSON paths")
    fbeta.add_argument("--beta-weight", type=float, default=8.0, help="F-beta weight (pairs with its inverse)")
    fbeta.add_argument("--out", required=True, help="scatter CSV path")
    fbeta.add_argument("--plot", help="optional scatter plot path (.svg/.pdf)")
    fbeta.set_defaults(func=cmd_fbeta)

    plot = subs.add_parser("plot", help="render a report's attainable region")
    plot.add_argument("report", help="report JSON path")
    plot.add_argument("--out", required=True, help="plot path (.svg/.pdf)")
    plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except FeatureFileError as exc:
        return _fail(EXIT_PARSE, f"field={exc.field} {exc}")
    except (HistogramFormatError, ReportFormatError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    except MissingClassError as exc:
        missing = ",".join(str(c) for c in exc.missing)
        return _fail(EXIT_MISSING_CLASS, f"missing_classes={missing} {exc}")
    except NormalizationError as exc:
        return _fail(EXIT_NORMALIZATION, str(exc))
    except DimensionMismatchError as exc:
        return _fail(EXIT_DIMENSION, str(exc))
    except PrdError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except OSError as exc:
        return _fail(EXIT_PARSE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
