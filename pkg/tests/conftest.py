from fractions import Fraction

import pytest

from untangle.corpus import entries, load
from untangle.lp import ConstraintSystem


def cycling_system():
    """Zero-cost dual of a textbook LP on which Dantzig's rule cycles."""
    a = [(Fraction(1, 2), Fraction(-11, 2), Fraction(-5, 2), 9),
         (Fraction(1, 2), Fraction(-3, 2), Fraction(-1, 2), 1)]
    c = [10, -57, -9, -24]
    return ConstraintSystem(6, [({j: -1, 4: a[0][j], 5: a[1][j]}, c[j]) for j in range(4)])


@pytest.fixture(scope="session")
def corpus():
    return {e.name: (e, e.triangulation()) for e in entries()}


@pytest.fixture(scope="session")
def solid_torus():
    return load("solid-torus")


@pytest.fixture(scope="session")
def trefoil():
    return load("trefoil")
