import numpy as np
import pytest

from lossgain.landau import derive_params


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def region_one():
    return derive_params(2.0, 0.0, 1.0)


def random_antisymmetric(rng, n):
    a = rng.normal(size=(n, n))
    return a - a.T
