import numpy as np
import pytest

from lazymc import validate_stochastic


@pytest.fixture
def reflecting_walk():
    """Periodic reflecting walk on a three-state path."""
    return validate_stochastic([[0.0, 1.0, 0.0], [0.5, 0.0, 0.5], [0.0, 1.0, 0.0]])


@pytest.fixture
def constant_rows():
    """Rank-one chain: every row equals (0.5, 0.2, 0.3)."""
    return validate_stochastic([[0.5, 0.2, 0.3]] * 3)


@pytest.fixture
def three_cycle():
    return validate_stochastic([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def random_ergodic(rng: np.random.Generator, d: int, blend: float = 1e-3):
    rows = rng.dirichlet(np.ones(d), size=d)
    return validate_stochastic((1.0 - blend) * rows + blend / d)


def random_reversible(rng: np.random.Generator, d: int):
    W = rng.uniform(0.05, 1.0, size=(d, d))
    W = (W + W.T) / 2.0
    return validate_stochastic(W / W.sum(axis=1, keepdims=True))
