"""Command line: extract --in DIR --out FILE [--model NAME --layer NAME --batch N]."""

from __future__ import annotations

import argparse
import sys

from .images import NoImagesError
from .model import DEFAULT_LAYER, DEFAULT_MODEL, EmbeddingConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extract",
        description="Embed an image directory into a feature file",
    )
    parser.add_argument("--in", dest="image_dir", required=True, help="image directory")
    parser.add_argument("--out", required=True, help="output feature file")
    parser.add_argument("--model", default=DEFAULT_MODEL, help="embedding network")
    parser.add_argument("--layer", default=DEFAULT_LAYER, help="feature tap point")
    parser.add_argument("--batch", type=int, default=32, help="inference batch size")
    parser.add_argument("--device", default="cpu", help="torch device hint")
    parser.add_argument(
        "--weights",
        default="pretrained",
        help="'pretrained', 'none' (seed-fixed random init), or a checkpoint path",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = EmbeddingConfig(
            model=args.model,
            layer=args.layer,
            batch_size=args.batch,
            device=args.device,
            weights=args.weights,
            out_path=args.out,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    from .extract import extract

    try:
        result = extract(args.image_dir, config)
    except NoImagesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    labeled = "labeled" if result.labeled else "unlabeled"
    print(
        f"wrote {result.out_path}: N={result.n}, D={result.dim}, {labeled}"
        + (f", skipped {result.skipped}" if result.skipped else "")
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
