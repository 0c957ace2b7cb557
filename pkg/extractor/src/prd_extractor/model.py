"""Embedding network registry and configuration.

The default tap is the 2048-wide global-average-pool layer of Inception v3,
the customary embedding space for comparing image sample sets. Weights come
from torchvision's pretrained checkpoints by default; `weights="none"` builds
a seed-fixed randomly initialized network (useful offline and for format
tests, where no criterion depends on embedding values), and a filesystem path
loads a local checkpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class LayerSpec:
    width: int
    input_size: int
    mean: tuple[float, float, float]
    std: tuple[float, float, float]


# model id -> layer id -> tap description
REGISTRY = {
    "inception_v3": {
        "pool3": LayerSpec(
            width=2048,
            input_size=299,
            mean=(0.485, 0.456, 0.406),
            std=(0.229, 0.224, 0.225),
        ),
    },
}

DEFAULT_MODEL = "inception_v3"
DEFAULT_LAYER = "pool3"


@dataclass(frozen=True)
class EmbeddingConfig:
    model: str = DEFAULT_MODEL
    layer: str = DEFAULT_LAYER
    batch_size: int = 32
    device: str = "cpu"
    weights: str = "pretrained"  # "pretrained" | "none" | checkpoint path
    out_path: str | Path | None = None

    def __post_init__(self):
        if self.model not in REGISTRY:
            raise ValueError(
                f"unknown model {self.model!r}; available: {sorted(REGISTRY)}"
            )
        if self.layer not in REGISTRY[self.model]:
            raise ValueError(
                f"model {self.model!r} has no layer {self.layer!r}; "
                f"available: {sorted(REGISTRY[self.model])}"
            )
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")

    @property
    def layer_spec(self) -> LayerSpec:
        return REGISTRY[self.model][self.layer]


def load_network(config: EmbeddingConfig):
    """Build the configured network with its classifier head removed."""
    import torch
    import torchvision.models as models

    if config.model != "inception_v3":
        raise ValueError(f"unknown model {config.model!r}")
    if config.weights == "pretrained":
        net = models.inception_v3(weights=models.Inception_V3_Weights.IMAGENET1K_V1)
    elif config.weights == "none":
        # deterministic stand-in weights; embeddings are arbitrary but stable
        torch.manual_seed(0)
        net = models.inception_v3(weights=None, init_weights=True)
    else:
        net = models.inception_v3(weights=None, init_weights=False)
        state = torch.load(config.weights, map_location="cpu", weights_only=True)
        net.load_state_dict(state)
    net.fc = torch.nn.Identity()  # expose the 2048-wide pooled features
    net.eval()
    return net.to(config.device)
