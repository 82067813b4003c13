import pytest

from crystalqp.quiver import Seed


@pytest.fixture
def u2():
    """The rank-2 unipotent fixture: one mutable vertex, two frozen."""
    return Seed(3, {1, 2}, [[0, -1, 1], [1, 0, 0], [-1, 0, 0]], label="U2")


@pytest.fixture
def a2_mutable():
    return Seed(2, set(), [[0, 1], [-1, 0]])
