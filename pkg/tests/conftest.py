import random

import pytest

from nscurve import tower as tw
from nscurve.plane import HomPoly
from nscurve.tower import TowerScalar


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_poly(rng, max_deg, p=3, nonzero=False):
    while True:
        coeffs = [rng.randrange(p) for _ in range(rng.randrange(max_deg + 1) + 1)]
        if not nonzero or any(coeffs):
            return coeffs


def rand_scalar(rng, level=0, p=3, max_deg=4):
    num = rand_poly(rng, max_deg, p)
    den = rand_poly(rng, max_deg, p, nonzero=True)
    return TowerScalar(num, den, level, p)


def rand_nonzero_scalar(rng, level=0, p=3, max_deg=4):
    while True:
        x = rand_scalar(rng, level, p, max_deg)
        if not x.is_zero:
            return x


def rand_hompoly(rng, degree, level=1, p=3, max_deg=2):
    from nscurve.plane import monomial_order

    coeffs = {}
    for e in monomial_order(degree):
        if rng.random() < 0.6:
            coeffs[e] = rand_scalar(rng, level, p, max_deg)
    poly = HomPoly(degree, coeffs, p)
    if poly.is_zero:
        poly = HomPoly(degree, {(degree, 0, 0): TowerScalar.one(p)}, p)
    return poly


def scalars(p=3):
    one = TowerScalar.one(p)
    zero = TowerScalar.zero(p)
    two = TowerScalar.from_int(2, p)
    t = TowerScalar.generator(0, p)
    r = TowerScalar.generator(1, p)
    return one, zero, two, t, r


def xyz(p=3):
    return tuple(HomPoly.variable(v, p) for v in "xyz")
