import numpy as np
import pytest

import helpers


@pytest.fixture
def d1():
    return helpers.d1_context()


@pytest.fixture
def uniform_ctx():
    return helpers.uniform_context()


@pytest.fixture
def hyperbolic_ctx():
    return helpers.hyperbolic_context()


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)
