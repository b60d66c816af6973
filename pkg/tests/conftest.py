import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from biinvariant.sampling import DEFAULT_SEED

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_rationals, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


def F(x):
    return Fraction(x)
