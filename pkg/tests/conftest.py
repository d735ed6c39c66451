import math

import numpy as np
import pytest

from chamberflow.config import settings
from chamberflow.rootsys import chamber, get

RHO1 = "rho1-SU3-SO3"

# vertex of the rho1 triangle on the x2 axis
APEX = (0.0, math.pi / (2 * math.sqrt(3)))
MINIMUM = (math.pi / 6, 0.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: catalog-wide runs with the full point and start counts")


@pytest.fixture(autouse=True)
def fresh_settings():
    yield settings()
    settings().reset()


@pytest.fixture
def rho1():
    return get(RHO1)


@pytest.fixture
def rho1_chamber(rho1):
    return chamber(rho1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240229)
