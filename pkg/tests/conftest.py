import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hyperkings import Partition, fixture_prop2, random_instance  # noqa: E402


@pytest.fixture
def prop2():
    return fixture_prop2()


@st.composite
def sizes_for(draw, n):
    """Random composition of n into at least two positive parts."""
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), min_size=1)))
    bounds = [0, *cuts, n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


@st.composite
def instances(draw, n_min=4, n_max=6, k_min=2):
    n = draw(st.integers(n_min, n_max))
    k = draw(st.integers(k_min, n - 1))
    sizes = draw(sizes_for(n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(n, k, Partition.from_sizes(sizes), seed)
