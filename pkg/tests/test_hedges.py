import math

import pytest

from ucc.errors import MalformedHedge
from ucc.hedges import hedge
from ucc.interval import Interval
from ucc.pbox import PBox

I = Interval


def test_about():
    assert hedge("about", "7.2") == I(7.0, 7.4)
    assert hedge("about", "12") == I(10, 14)
    assert hedge("about", "0.55") == I(0.53, 0.57)


def test_around():
    assert hedge("around", "7.2") == I(6.2, 8.2)
    assert hedge("around", "100") == I(90, 110)
    assert hedge("around", "0.5") == I(-0.5, 1.5)


def test_count():
    assert hedge("count", "100") == I(90, 110)
    assert hedge("count", "16") == I(12, 20)
    assert hedge("count", "0") == I(0, 0)
    with pytest.raises(MalformedHedge):
        hedge("count", "-4")


def test_almost():
    assert hedge("almost", "7.2") == I(7.15, 7.2)
    assert hedge("almost", "10") == I(9.5, 10)
    assert hedge("almost", "0.5") == I(0.45, 0.5)


def test_over():
    assert hedge("over", "7.2") == I(7.2, 7.25)
    assert hedge("over", "10") == I(10, 10.5)
    assert hedge("over", "0.04") == I(0.04, 0.045)


def test_above():
    assert hedge("above", "7.2") == I(7.2, 7.4)
    assert hedge("above", "10") == I(10, 12)
    assert hedge("above", "0.5") == I(0.5, 0.7)


def test_below():
    assert hedge("below", "7.2") == I(7.0, 7.2)
    assert hedge("below", "10") == I(8, 10)
    assert hedge("below", "0.5") == I(0.3, 0.5)


def test_at_most():
    assert hedge("at most", "12") == I(0, 12)
    assert hedge("at most", "7.2") == I(0, 7.2)
    assert hedge("at most", "0.001") == I(0, 0.001)


def test_at_least():
    assert hedge("at least", "3") == I(3, math.inf)
    assert hedge("at least", "7.2") == I(7.2, math.inf)
    assert hedge("at least", "0") == I(0, math.inf)


def test_order():
    assert hedge("order", "8") == I(4, 40)
    assert hedge("order", "1") == I(0.5, 5)
    assert hedge("order", "0.2") == I(0.1, 1.0)


def test_between():
    assert hedge("between", "3", "7") == I(3, 7)
    assert hedge("between", "0.1", "0.2") == I(0.1, 0.2)
    assert hedge("between", "-1", "1") == I(-1, 1)
    with pytest.raises(MalformedHedge):
        hedge("between", "7", "3")


def test_out_of():
    box = hedge("out of", "2", "10", steps=100)
    assert isinstance(box, PBox) and box.kind == "cbox"
    box2 = hedge("out of", "0", "5", steps=60)
    assert (box2.left == 0).all()
    box3 = hedge("out of", "3", "3", steps=60)
    assert (box3.right == 1).all()
    with pytest.raises(MalformedHedge):
        hedge("out of", "2.5", "10")


def test_written_resolution_matters():
    # trailing zeros sharpen the tick
    assert hedge("about", "7.20") == I(7.18, 7.22)
    assert hedge("about", "1.5e2") == I(130.0, 170.0)


def test_unknown_word():
    with pytest.raises(MalformedHedge):
        hedge("roughly", "3")
    with pytest.raises(MalformedHedge):
        hedge("about", "not-a-number")
