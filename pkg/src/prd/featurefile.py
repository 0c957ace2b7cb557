"""Binary container for embedding vectors.

Layout (all integers little-endian unsigned 32-bit):

    bytes 0..3    magic  b"PRDF"
    bytes 4..7    version (1)
    bytes 8..11   N, number of rows
    bytes 12..15  D, vector width
    bytes 16..19  dtype tag (1 = float32)
    bytes 20..23  flags (bit 0: a label block follows the payload)
    payload       N*D float32 little-endian, row-major
    labels        N int32 little-endian, present iff flags bit 0

Parse errors carry the name of the offending header field so callers can
report it verbatim.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .clustering import FeatureSet
from .core import PrdError

__all__ = [
    "MAGIC",
    "VERSION",
    "DTYPE_FLOAT32",
    "FLAG_LABELS",
    "HEADER",
    "FeatureFileError",
    "write_feature_file",
    "read_feature_file",
]

MAGIC = b"PRDF"
VERSION = 1
DTYPE_FLOAT32 = 1
FLAG_LABELS = 1

HEADER = struct.Struct("<4sIIIII")


class FeatureFileError(PrdError):
    """A feature file failed to parse; ``field`` names the offending part."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


def write_feature_file(path: str | Path, features: FeatureSet) -> None:
    """Serialize a feature set; vectors are stored as float32."""
    flags = FLAG_LABELS if features.labels is not None else 0
    payload = np.ascontiguousarray(features.vectors, dtype="<f4").tobytes()
    blob = HEADER.pack(MAGIC, VERSION, features.n, features.dim, DTYPE_FLOAT32, flags)
    blob += payload
    if features.labels is not None:
        blob += np.ascontiguousarray(features.labels, dtype="<i4").tobytes()
    Path(path).write_bytes(blob)


def read_feature_file(path: str | Path) -> FeatureSet:
    """Parse a feature file back into a (float64) feature set."""
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise FeatureFileError("header", f"file shorter than the {HEADER.size}-byte header")
    magic, version, n, d, dtype, flags = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FeatureFileError("magic", f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise FeatureFileError("version", f"unsupported version {version}, expected {VERSION}")
    if n < 1:
        raise FeatureFileError("n", f"row count must be >= 1, got {n}")
    if d < 1:
        raise FeatureFileError("d", f"vector width must be >= 1, got {d}")
    if dtype != DTYPE_FLOAT32:
        raise FeatureFileError("dtype", f"unsupported dtype tag {dtype}, expected {DTYPE_FLOAT32}")
    if flags not in (0, FLAG_LABELS):
        raise FeatureFileError("flags", f"unknown flag bits in {flags:#x}")
    expected = HEADER.size + n * d * 4 + (n * 4 if flags & FLAG_LABELS else 0)
    if len(data) < expected:
        raise FeatureFileError(
            "payload", f"truncated: need {expected} bytes, file has {len(data)}"
        )
    if len(data) > expected:
        raise FeatureFileError(
            "payload", f"trailing bytes: expected {expected} bytes, file has {len(data)}"
        )
    offset = HEADER.size
    vectors = (
        np.frombuffer(data, dtype="<f4", count=n * d, offset=offset)
        .reshape(n, d)
        .astype(np.float64)
    )
    if not np.all(np.isfinite(vectors)):
        raise FeatureFileError("payload", "payload contains non-finite values")
    labels = None
    if flags & FLAG_LABELS:
        labels = np.frombuffer(
            data, dtype="<i4", count=n, offset=offset + n * d * 4
        ).astype(np.int64)
    return FeatureSet(vectors, labels)
