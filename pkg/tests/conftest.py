import numpy as np
import pytest

from kdclassical import DEFAULT_TOL


@pytest.fixture
def tol():
    return DEFAULT_TOL


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240817))
