"""Batched embedding of an image directory into a feature file."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .featurefile import write_features
from .images import NoImagesError, derive_labels, list_images, load_batch
from .model import EmbeddingConfig, load_network


@dataclass(frozen=True)
class ExtractResult:
    out_path: Path
    n: int
    dim: int
    labeled: bool
    skipped: int


def extract(image_dir: str | Path, config: EmbeddingConfig) -> ExtractResult:
    """Embed every decodable image under ``image_dir`` and write the file.

    Rows follow the lexicographic order of the image paths; undecodable images
    are skipped with a warning and it is an error when none survive. Labels
    are derived from immediate subdirectory names when all images live in one.
    """
    if config.out_path is None:
        raise ValueError("config.out_path is required")
    import torch

    paths = list_images(image_dir)
    net = load_network(config)
    spec = config.layer_spec
    vectors: list[np.ndarray] = []
    kept: list[Path] = []
    with torch.no_grad():
        for start in range(0, len(paths), config.batch_size):
            batch_paths = paths[start : start + config.batch_size]
            batch, decoded = load_batch(batch_paths, spec.input_size, spec.mean, spec.std)
            if not decoded:
                continue
            tensor = torch.from_numpy(batch).to(config.device)
            out = net(tensor)
            vectors.append(out.cpu().numpy().astype(np.float32))
            kept.extend(decoded)
    if not kept:
        raise NoImagesError(f"all {len(paths)} images under {image_dir} were undecodable")
    stacked = np.concatenate(vectors, axis=0)
    assert stacked.shape == (len(kept), spec.width)
    labels = derive_labels(image_dir, kept)
    write_features(config.out_path, stacked, labels)
    return ExtractResult(
        out_path=Path(config.out_path),
        n=len(kept),
        dim=spec.width,
        labeled=labels is not None,
        skipped=len(paths) - len(kept),
    )
