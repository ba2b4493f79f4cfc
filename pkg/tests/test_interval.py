import math
import random

import pytest

from ucc import interval as ivl
from ucc.errors import DivisionByUncertainZero, DomainError, EmptyIntersection
from ucc.interval import Interval

I = Interval


def test_constructor_validates():
    with pytest.raises(ValueError):
        I(2, 1)
    with pytest.raises(ValueError):
        I(float("nan"), 1)
    assert I(1, 1).is_degenerate


def test_basic_binops_exact():
    assert ivl.mul(I(2, 3), I(4, 5)) == I(8, 15)
    assert ivl.add(I(3, 7), I(0, 0)) == I(3, 7)
    assert ivl.sub(I(1, 2), I(-1, 1)) == I(0, 3)
    assert ivl.add(I(1, 2), I(3, 4)) == I(4, 6)
    assert ivl.div(I(1, 2), I(2, 4)) == I(0.25, 1.0)


def test_division_by_uncertain_zero():
    with pytest.raises(DivisionByUncertainZero):
        ivl.div(I(1, 2), I(-1, 1))
    with pytest.raises(DivisionByUncertainZero):
        ivl.div(I(1, 2), I(0, 1))


def test_sub_endpoint_formula_sampling_oracle():
    # [1,2] - [-1,1] = [0,3]; check by dense sampling
    rng = random.Random(7)
    res = ivl.sub(I(1, 2), I(-1, 1))
    assert res == I(0, 3)
    for _ in range(1000):
        x = rng.uniform(1, 2)
        y = rng.uniform(-1, 1)
        assert res.contains(x - y)


def test_opposite_and_perfect_coupling():
    assert ivl.binop("*", I(2, 3), I(4, 5), "o") == I(10, 12)
    assert ivl.binop("*", I(2, 3), I(4, 5), "p") == I(8, 15)
    assert ivl.binop("+", I(1, 2), I(3, 5), "o") == I(5, 6)
    # interior extremum of the coupled product
    assert ivl.binop("*", I(-1, 1), I(-1, 1), "p") == I(0, 1)
    assert ivl.binop("*", I(-1, 1), I(-1, 1), "o") == I(-1, 0)


def test_exp_outward():
    r = ivl.exp(I(0, 1))
    assert r.lo <= 1.0 <= r.hi
    assert abs(r.lo - 1.0) <= 1e-15
    assert r.hi >= math.e
    assert r.hi - math.e < 1e-14


def test_sin_cos_extrema():
    r = ivl.sin(I(0, math.pi))
    assert abs(r.lo) < 1e-15 and r.hi == 1.0
    assert ivl.sin(I(0, 7)) == I(-1, 1)
    r = ivl.cos(I(0, math.pi))
    assert r.lo == -1.0 and r.hi >= 1.0 - 1e-15
    r = ivl.cos(I(math.pi / 4, math.pi / 3))
    assert r.lo <= 0.5 and 0.70710678 <= r.hi < 0.7072


def test_sqrt_policies():
    diags = []
    r = ivl.sqrt(I(-1, 1), diagnostics=diags)
    assert r.lo == 0.0 and abs(r.hi - 1.0) < 1e-15
    assert diags and "clamp" in diags[0]
    with pytest.raises(DomainError):
        ivl.sqrt(I(-2, -1))
    ivl.set_sqrt_policy(strict=True)
    try:
        with pytest.raises(DomainError):
            ivl.sqrt(I(-1, 1))
    finally:
        ivl.set_sqrt_policy(strict=False)


def test_ln_domain():
    with pytest.raises(DomainError):
        ivl.ln(I(0, 1))
    r = ivl.ln(I(1, math.e))
    assert r.lo <= 0 and r.hi >= 1


def test_tan_pole():
    assert ivl.tan(I(1, 2)) == I(-math.inf, math.inf)  # pi/2 inside
    r = ivl.tan(I(0, 1))
    assert r.lo <= 0 and r.hi >= math.tan(1)


def test_square_and_powers():
    assert ivl.square(I(-1, 2)) == I(0, 4)
    assert ivl.pow_int(I(-2, 1), 3) == I(-8, 1)
    assert ivl.pow_int(I(2, 3), -1) == I(1 / 3, 0.5)
    assert ivl.pow_int(I(-2, 3), 0) == I(1, 1)
    r = ivl.pow_real(I(1, 4), 0.5)
    assert r.lo <= 1 and abs(r.hi - 2) < 1e-14


def test_square_subset_of_self_product():
    rng = random.Random(3)
    for _ in range(200):
        lo = rng.uniform(-5, 5)
        hi = lo + rng.uniform(0, 5)
        x = I(lo, hi)
        sq = ivl.square(x)
        prod = ivl.mul(x, x)
        assert sq.subset_of(prod)
        if lo < 0 < hi:
            assert prod.lo < sq.lo  # strict containment with 0 inside


def test_intersect_and_hull():
    assert ivl.intersect(I(1, 10), I(2, 10)) == I(2, 10)
    assert ivl.intersect(I(0, 1), I(0, 1)) == I(0, 1)
    with pytest.raises(EmptyIntersection):
        ivl.intersect(I(0, 1), I(2, 3))
    assert ivl.hull(I(0, 1), I(2, 3)) == I(0, 3)


def test_extended_endpoints():
    assert ivl.add(I(0, math.inf), I(1, 2)) == I(1, math.inf)
    assert ivl.mul(I(0, math.inf), I(0, 1)) == I(0, math.inf)
    assert ivl.sub(I(-math.inf, math.inf), I(-math.inf, math.inf)) == I(-math.inf, math.inf)
    with pytest.raises(DomainError):
        ivl.sub(I(math.inf, math.inf), I(math.inf, math.inf))
    assert ivl.div(I(1, 2), I(1, math.inf)) == I(0, 2)


def _rand_interval(rng, span=10.0):
    lo = rng.uniform(-span, span)
    return I(lo, lo + rng.uniform(0, span))


@pytest.mark.parametrize("op", ["+", "-", "*", "/"])
def test_enclosure_frechet(op):
    # master property: sampled scalar results always fall inside the bounds
    rng = random.Random(hash(op) & 0xFFFF)
    checked = 0
    while checked < 10_000:
        x = _rand_interval(rng)
        y = _rand_interval(rng)
        if op == "/" and y.straddles_zero():
            continue
        res = ivl.binop(op, x, y, "f")
        xv = rng.uniform(x.lo, x.hi)
        yv = rng.uniform(y.lo, y.hi)
        val = {"+": xv + yv, "-": xv - yv, "*": xv * yv, "/": xv / yv if yv else None}[op]
        assert res.contains(val), (op, x, y, xv, yv, res)
        checked += 1


@pytest.mark.parametrize("dep", ["p", "o"])
@pytest.mark.parametrize("op", ["+", "-", "*", "/"])
def test_enclosure_coupled(op, dep):
    # linear-sweep coupling: x(u) paired with y(u) or y(1-u)
    rng = random.Random(hash((op, dep)) & 0xFFFF)
    checked = 0
    while checked < 10_000:
        x = _rand_interval(rng)
        y = _rand_interval(rng)
        if op == "/" and y.straddles_zero():
            continue
        res = ivl.binop(op, x, y, dep)
        u = rng.random()
        xv = x.lo + u * (x.hi - x.lo)
        uy = u if dep == "p" else 1.0 - u
        yv = y.lo + uy * (y.hi - y.lo)
        val = {"+": xv + yv, "-": xv - yv, "*": xv * yv, "/": xv / yv if yv else None}[op]
        if val is None:
            continue
        assert res.contains(val), (op, dep, x, y, u, res)
        checked += 1


@pytest.mark.parametrize("op", ["+", "-", "*", "/"])
def test_inclusion_monotone(op):
    rng = random.Random(hash(op) % 1000 + 5)
    for _ in range(2000):
        outer_x = _rand_interval(rng)
        outer_y = _rand_interval(rng)
        if op == "/" and outer_y.straddles_zero():
            continue
        # inner intervals drawn inside the outer ones
        a = rng.uniform(outer_x.lo, outer_x.hi)
        b = rng.uniform(a, outer_x.hi)
        c = rng.uniform(outer_y.lo, outer_y.hi)
        d = rng.uniform(c, outer_y.hi)
        inner = ivl.binop(op, I(a, b), I(c, d), "f")
        outer = ivl.binop(op, outer_x, outer_y, "f")
        assert inner.subset_of(outer)


@pytest.mark.parametrize("op", ["+", "-", "*", "/"])
def test_degenerate_collapse_exact(op):
    rng = random.Random(11)
    for _ in range(2000):
        xv = rng.uniform(-100, 100)
        yv = rng.uniform(-100, 100)
        if op == "/" and yv == 0:
            continue
        res = ivl.binop(op, I.point(xv), I.point(yv), "f")
        scalar = {"+": xv + yv, "-": xv - yv, "*": xv * yv, "/": xv / yv}[op]
        assert res.contains(scalar)
        assert res.width <= abs(scalar) * 4e-16 + 5e-324
