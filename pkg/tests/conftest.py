from __future__ import annotations

import pytest

from rhombwork.cyclo import ring
from rhombwork.seqboundary import build_boundary
from rhombwork.subst import make_substitution
from rhombwork.tiler import construct_tiling

SEQ_SEVENFOLD = (1, -1, 0)
SEQ_UNTILABLE = (0, 3, 1, 2, -1, -2, -3, 0)
SEQ_11FOLD = (
    -1, 1, -3, 3, 0, 2, -2, -1, 1, 0, -5, 5, -3, 3, -1, 1, 4, -4,
    2, -2, 0, -1, 1, 2, -2, -3, 3, 0, 4, -4, -1, 1, 2, -2, 0,
)


@pytest.fixture(scope="session")
def ring5():
    return ring(5)


@pytest.fixture(scope="session")
def ring7():
    return ring(7)


@pytest.fixture(scope="session")
def ring11():
    return ring(11)


@pytest.fixture(scope="session")
def sevenfold_sub(ring7):
    images = {
        label: construct_tiling(build_boundary(ring7, SEQ_SEVENFOLD, label))
        for label in (2, 4, 6)
    }
    return make_substitution(ring7, SEQ_SEVENFOLD, images)


@pytest.fixture(scope="session")
def identity_sub(ring7):
    images = {
        label: construct_tiling(build_boundary(ring7, (0,), label))
        for label in (2, 4, 6)
    }
    return make_substitution(ring7, (0,), images)
