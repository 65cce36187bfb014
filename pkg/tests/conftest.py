import numpy as np
import pytest

from rmga import RmConfig, get


@pytest.fixture
def config():
    return RmConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def spec(name):
    return get(name)
