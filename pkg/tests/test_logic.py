import pytest

from ucc.interval import Interval
from ucc.logic import (
    DUNNO,
    FALSE,
    TRUE,
    Logical,
    always,
    compare,
    eq,
    eqq,
    gt,
    lt,
    lnot,
    sometimes,
)

I = Interval

# Representative configurations: (x, y, relation of x to y)
DISJOINT_LEFT = (I(1, 2), I(3, 4))  # x entirely left of y
DISJOINT_RIGHT = (I(3, 4), I(1, 2))
TOUCHING = (I(1, 2), I(2, 3))  # x.hi == y.lo
OVERLAP = (I(1, 3), I(2, 4))
NESTED = (I(1, 4), I(2, 3))  # y inside x
SAME = (I(2, 3), I(2, 3))
DEGENERATE = (I(2, 2), I(2, 2))
DEG_APART = (I(1, 1), I(2, 2))


def test_lt_cases():
    assert lt(*DISJOINT_LEFT) is TRUE
    assert lt(*DISJOINT_RIGHT) is FALSE
    assert lt(*TOUCHING) is DUNNO  # can be equal, can be less
    assert lt(I(2, 3), I(1, 2)) is FALSE  # lo >= hi of y
    assert lt(*OVERLAP) is DUNNO
    assert lt(*NESTED) is DUNNO
    assert lt(*SAME) is DUNNO
    assert lt(*DEGENERATE) is FALSE
    assert lt(*DEG_APART) is TRUE


def test_gt_cases():
    assert gt(*DISJOINT_LEFT) is FALSE
    assert gt(*DISJOINT_RIGHT) is TRUE
    assert gt(*TOUCHING) is FALSE  # x <= y everywhere possible... x.hi == y.lo
    assert gt(*OVERLAP) is DUNNO
    assert gt(*NESTED) is DUNNO
    assert gt(*DEGENERATE) is FALSE


def test_le_ge_cases():
    assert compare("<=", *TOUCHING) is TRUE
    assert compare("<=", *DISJOINT_LEFT) is TRUE
    assert compare("<=", *DISJOINT_RIGHT) is FALSE
    assert compare("<=", *OVERLAP) is DUNNO
    assert compare(">=", *DISJOINT_RIGHT) is TRUE
    assert compare(">=", *DEGENERATE) is TRUE


def test_eq_never_true():
    assert eq(*SAME) is DUNNO
    assert eq(*DEGENERATE) is DUNNO  # value equality is never provable
    assert eq(*DISJOINT_LEFT) is FALSE
    assert eq(*OVERLAP) is DUNNO
    assert eq(*NESTED) is DUNNO


def test_eqq_form_equivalence():
    assert eqq(*SAME) is TRUE
    assert eqq(I(2, 3), I(2, 4)) is FALSE
    assert eqq(*DEGENERATE) is TRUE
    assert eqq(*OVERLAP) is FALSE


def test_always_sometimes():
    assert always(DUNNO) is FALSE
    assert sometimes(DUNNO) is TRUE
    assert always(TRUE) is TRUE
    assert always(FALSE) is FALSE
    assert sometimes(TRUE) is TRUE
    assert sometimes(FALSE) is FALSE


def test_always_of_lt_matches_closed_form():
    # always(X < Y) is TRUE exactly when x.hi < y.lo
    cases = [DISJOINT_LEFT, DISJOINT_RIGHT, TOUCHING, OVERLAP, NESTED, SAME, DEG_APART]
    for x, y in cases:
        assert (always(lt(x, y)) is TRUE) == (x.hi < y.lo)
        assert (sometimes(lt(x, y)) is TRUE) == (x.lo < y.hi)


def test_trichotomy():
    cases = [DISJOINT_LEFT, DISJOINT_RIGHT, TOUCHING, OVERLAP, NESTED, SAME, DEGENERATE]
    for x, y in cases:
        r = lt(x, y)
        assert sum([r is TRUE, r is FALSE, r is DUNNO]) == 1
        if always(r) is TRUE:
            assert sometimes(r) is TRUE


def test_dunno_not_boolable():
    with pytest.raises(TypeError):
        bool(DUNNO)
    assert bool(TRUE) and not bool(FALSE)


def test_prob_interval_states():
    assert Logical.from_prob(I(1, 1)) is not None
    assert Logical.from_prob(I(1, 1)).is_true
    assert Logical.from_prob(I(0, 0)).is_false
    l = Logical.from_prob(I(0.2, 0.8))
    assert l.is_dunno and l.prob == I(0.2, 0.8)
    with pytest.raises(ValueError):
        Logical("dunno", I(-0.1, 0.5))


def test_lnot():
    assert lnot(TRUE) is FALSE
    assert lnot(FALSE) is TRUE
    flipped = lnot(Logical.from_prob(I(0.25, 0.75)))
    assert flipped.is_dunno and flipped.prob == I(0.25, 0.75)
