from fractions import Fraction

import pytest

from ellipdiv import Point, make_context, make_curve

# (curve coefficients, base point) -- all non-torsion
CORPUS = {
    "x3+x+1": ((0, 0, 0, 1, 1), (0, 1)),
    "x3+x+6": ((0, 0, 0, 1, 6), (-1, 2)),
    "x3+x+1@2P": ((0, 0, 0, 1, 1), (Fraction(1, 4), Fraction(-9, 8))),
    "M6": ((0, 0, 0, -3, 7), (-1, -3)),
    "r4": ((0, 0, 0, -4, 4), (2, -2)),
    "M10-general": ((1, -1, 1, 1, 7), (1, -4)),
    "37a": ((0, 0, 1, -1, 0), (0, 0)),
}

TORSION = ((0, -1, 1, 0, 0), (0, 0))


def build(key):
    coeffs, (x, y) = CORPUS[key] if isinstance(key, str) else key
    return make_context(make_curve(*coeffs), Point(x, y))


@pytest.fixture
def ctx_a():
    return build("x3+x+1")


@pytest.fixture
def ctx_b():
    return build("x3+x+6")


@pytest.fixture
def ctx_torsion():
    return build(TORSION)


@pytest.fixture(params=sorted(CORPUS))
def corpus_ctx(request):
    return build(request.param)
