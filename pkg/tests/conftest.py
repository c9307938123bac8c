import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from approxclones.core import Profile

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

NAMES = "abcdefghij"


@st.composite
def profiles(draw, min_m=2, max_m=5, max_ballots=8, max_count=4):
    """Small profiles: up to ``max_ballots`` distinct rows with multiplicities."""
    m = draw(st.integers(min_m, max_m))
    perm = st.permutations(range(m)).map(tuple)
    rows = draw(st.lists(st.tuples(st.integers(1, max_count), perm), min_size=1, max_size=max_ballots))
    return Profile(tuple(NAMES[:m]), tuple(rows))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
