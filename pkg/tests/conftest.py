import numpy as np
import pytest

from prd import DiscreteDistribution


def random_distribution(rng: np.random.Generator, size: int, zeros: int = 0) -> DiscreteDistribution:
    """Random distribution over `size` states with `zeros` empty states."""
    w = rng.random(size) + 1e-3
    if zeros:
        idx = rng.choice(size, size=zeros, replace=False)
        w[idx] = 0.0
    return DiscreteDistribution(w / w.sum())


def random_pair(rng: np.random.Generator, size: int, zeros: int = 0):
    return random_distribution(rng, size, zeros), random_distribution(rng, size, zeros)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
