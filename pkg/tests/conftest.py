import cmath
import math

import numpy as np
import pytest

from hyperradial.geometry import Space


def h3_average(alpha, r, rho=1.0):
    """Closed-form sphere average of omega**alpha in three dimensions (k=2).

    For k=2 the polar integral is elementary:
    sinh((1-alpha) s) / ((1-alpha) sinh s) with s = r / rho.
    """
    s = r / rho
    a = 1.0 - complex(alpha)
    if s == 0:
        return 1.0 + 0.0j
    if abs(a) < 1e-14:
        return complex(s / math.sinh(s))
    return cmath.sinh(a * s) / (a * math.sinh(s))


@pytest.fixture
def h3():
    return Space(2, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
