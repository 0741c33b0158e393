import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False, width=64)


def coeffs(dim, n=None):
    shape = (dim,) if n is None else (n, dim)
    return arrays(np.float64, shape, elements=finite)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
