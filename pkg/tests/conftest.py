import numpy as np
import pytest

from rankregret import Dataset

# Worked 7-tuple example used throughout: two attributes, skyline
# {1,2,3,4,7}, boundary tuples t1 (A2=1) and t7 (A1=1).
DEMO7_VALUES = np.array([
    [0.00, 1.00],
    [0.40, 0.95],
    [0.57, 0.75],
    [0.79, 0.60],
    [0.20, 0.50],
    [0.35, 0.30],
    [1.00, 0.00],
])


@pytest.fixture(scope="session")
def demo7() -> Dataset:
    return Dataset(DEMO7_VALUES)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240117)


def random_dataset(n: int, d: int, seed: int) -> Dataset:
    """Un-normalized random dataset; fine for rank/solver properties."""
    vals = np.random.default_rng(seed).random((n, d))
    return Dataset(vals, normalized=False)
