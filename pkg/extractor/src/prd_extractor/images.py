"""Image discovery, label derivation, and preprocessing."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
from PIL import Image

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".gif", ".webp", ".tif", ".tiff"}


class NoImagesError(Exception):
    pass


def list_images(image_dir: str | Path) -> list[Path]:
    """Decodable-looking files directly in the directory or one level down,
    in lexicographic order of their relative paths (the row order contract)."""
    root = Path(image_dir)
    if not root.is_dir():
        raise NoImagesError(f"{root} is not a directory")
    found = [
        p
        for p in root.glob("*")
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    ]
    found += [
        p
        for sub in sorted(d for d in root.iterdir() if d.is_dir())
        for p in sub.glob("*")
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    ]
    if not found:
        raise NoImagesError(f"no images found under {root}")
    return sorted(found, key=lambda p: str(p.relative_to(root)))


def derive_labels(root: str | Path, paths: list[Path]) -> np.ndarray | None:
    """Integer labels from immediate subdirectory names, sorted, when every
    image sits inside one; plain directories yield no labels."""
    root = Path(root)
    parents = [p.parent for p in paths]
    if any(parent == root for parent in parents):
        return None
    names = sorted({parent.name for parent in parents})
    ids = {name: i for i, name in enumerate(names)}
    return np.array([ids[parent.name] for parent in parents], dtype=np.int64)


def load_batch(paths: list[Path], input_size: int, mean, std) -> tuple[np.ndarray, list[Path]]:
    """Decode and preprocess a batch; undecodable images are skipped with a
    warning. Returns the stacked array and the paths actually decoded."""
    rows = []
    kept = []
    for path in paths:
        try:
            with Image.open(path) as img:
                rgb = img.convert("RGB").resize((input_size, input_size), Image.BILINEAR)
        except Exception as exc:
            print(f"warning: skipping undecodable image {path}: {exc}", file=sys.stderr)
            continue
        arr = np.asarray(rgb, dtype=np.float32) / 255.0
        arr = (arr - np.asarray(mean, dtype=np.float32)) / np.asarray(std, dtype=np.float32)
        rows.append(arr.transpose(2, 0, 1))
        kept.append(path)
    if not rows:
        return np.empty((0, 3, input_size, input_size), dtype=np.float32), []
    return np.stack(rows), kept
