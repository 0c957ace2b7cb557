import numpy as np
import pytest
from PIL import Image


def paint(path, seed, size=(64, 48)):
    """Deterministic, distinct test image."""
    rng = np.random.default_rng(seed)
    pixels = rng.integers(0, 256, size=(size[1], size[0], 3), dtype=np.uint8)
    Image.fromarray(pixels, mode="RGB").save(path)


@pytest.fixture
def four_image_dir(tmp_path):
    d = tmp_path / "images"
    d.mkdir()
    for i in range(4):
        paint(d / f"img_{i}.png", seed=100 + i)
    return d
