from fractions import Fraction

import pytest

from probdigit import (
    DigitRemap,
    Geometric,
    Identity,
    MixedHeadTail,
    PairSwap,
    TablePermutation,
)


@pytest.fixture(scope="session")
def half():
    return Geometric(Fraction(1, 2))


@pytest.fixture(scope="session")
def twothirds():
    return Geometric(Fraction(2, 3))


@pytest.fixture(scope="session")
def mixed():
    return MixedHeadTail((Fraction(1, 3), Fraction(1, 5)), Fraction(1, 2))


@pytest.fixture(scope="session")
def swap_remap(half, twothirds):
    """The worked pair-swap example: halving source, thirds target."""
    return DigitRemap(half, twothirds, PairSwap())


@pytest.fixture(scope="session")
def identity_remap(half):
    return DigitRemap(half, half, Identity())


@pytest.fixture(scope="session")
def table_remap(half, mixed):
    return DigitRemap(half, mixed, TablePermutation((3, 1, 2)))
