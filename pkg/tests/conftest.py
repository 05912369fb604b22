import pytest

from recplane.arrangement import Arrangement
from recplane.fields import PrimeField, RationalField

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
Q = RationalField()


@pytest.fixture
def four_cycle():
    """Four lines over F_2 whose only dependency is z1+z2+z3+z4 = 0."""
    return Arrangement(F2, 4, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])


@pytest.fixture
def triangle_q():
    """Three rational lines with the single dependency z1+z2+z3 = 0."""
    return Arrangement(Q, 2, [[1, 0], [0, 1], [-1, -1]])


@pytest.fixture
def triangle_f2():
    """x1, x2, x1+x2 over F_2."""
    return Arrangement(F2, 2, [[1, 0], [0, 1], [1, 1]])


@pytest.fixture
def boolean2():
    return Arrangement(Q, 2, [[1, 0], [0, 1]])


@pytest.fixture
def boolean3_f2():
    return Arrangement(F2, 3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
