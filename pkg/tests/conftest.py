import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from reosem.constraints import DataUniverse
from reosem.generate import random_circuit, random_pair
from reosem.primitives import PrimitiveKind, instantiate

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FOO = DataUniverse(["foo"])
FOO_BAR = DataUniverse(["foo", "bar"])

# the population used by the transform-law checks
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def circuits(draw, max_primitives=5, max_universe=2):
    return random_circuit(random.Random(draw(seeds)), max_primitives, max_universe)


@st.composite
def circuit_pairs(draw, max_primitives=5, max_universe=2):
    return random_pair(random.Random(draw(seeds)), max_primitives, max_universe)


@pytest.fixture
def foo():
    return FOO


@pytest.fixture
def lossyfifo():
    """LossySync(A, M) and FIFO(M, B) over {"foo"}, both models."""
    el, al = instantiate(PrimitiveKind.LOSSYSYNC, ["A", "M"], "1", FOO)
    ef, af = instantiate(PrimitiveKind.FIFO, ["M", "B"], "2", FOO)
    return el, al, ef, af
