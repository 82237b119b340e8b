import numpy as np
import pytest

from src.quantum import PureState, observable_from_hermitian
from tests.helpers import SIGMA_X, SIGMA_Z


@pytest.fixture
def sigma_z():
    return observable_from_hermitian(SIGMA_Z)


@pytest.fixture
def sigma_x():
    return observable_from_hermitian(SIGMA_X)


@pytest.fixture
def plus_state():
    return PureState(np.array([1, 1]) / np.sqrt(2)).density()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
