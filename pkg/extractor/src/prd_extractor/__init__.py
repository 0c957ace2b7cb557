"""Image directories to embedding feature files via a pretrained network."""

from .extract import ExtractResult, extract
from .featurefile import read_features, write_features
from .model import EmbeddingConfig

__version__ = "0.1.0"

__all__ = [
    "EmbeddingConfig",
    "ExtractResult",
    "extract",
    "read_features",
    "write_features",
]
