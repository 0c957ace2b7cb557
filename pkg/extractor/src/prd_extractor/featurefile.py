"""Writer for the feature-file container consumed by the curve pipeline.

Layout (integers little-endian unsigned 32-bit):

    "PRDF" | version=1 | N | D | dtype=1 (float32) | flags (bit 0: labels)
    N*D float32 little-endian row-major payload
    N int32 little-endian labels, present iff flagged

This mirrors the downstream reader's contract byte for byte; a minimal reader
is included for self-checks.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"PRDF"
VERSION = 1
DTYPE_FLOAT32 = 1
FLAG_LABELS = 1

HEADER = struct.Struct("<4sIIIII")


class FormatError(Exception):
    pass


def write_features(path: str | Path, vectors: np.ndarray, labels=None) -> None:
    vectors = np.asarray(vectors)
    if vectors.ndim != 2 or vectors.shape[0] < 1 or vectors.shape[1] < 1:
        raise FormatError(f"vectors must be a nonempty N x D matrix, got {vectors.shape}")
    n, d = vectors.shape
    flags = 0
    blob = bytearray()
    if labels is not None:
        labels = np.asarray(labels)
        if labels.shape != (n,):
            raise FormatError(f"labels must have shape ({n},), got {labels.shape}")
        flags = FLAG_LABELS
    blob += HEADER.pack(MAGIC, VERSION, n, d, DTYPE_FLOAT32, flags)
    blob += np.ascontiguousarray(vectors, dtype="<f4").tobytes()
    if labels is not None:
        blob += np.ascontiguousarray(labels, dtype="<i4").tobytes()
    Path(path).write_bytes(bytes(blob))


def read_features(path: str | Path):
    """Self-check reader; returns (vectors float32, labels or None)."""
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise FormatError("file shorter than the header")
    magic, version, n, d, dtype, flags = HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION or dtype != DTYPE_FLOAT32:
        raise FormatError(f"bad header: magic={magic!r} version={version} dtype={dtype}")
    vectors = np.frombuffer(data, dtype="<f4", count=n * d, offset=HEADER.size).reshape(n, d)
    labels = None
    if flags & FLAG_LABELS:
        labels = np.frombuffer(data, dtype="<i4", count=n, offset=HEADER.size + n * d * 4)
    return vectors, labels
