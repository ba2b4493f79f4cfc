"""Hedge words: natural-language uncertainty phrases about a number.

Each hedge maps a written number to an interval whose half-width scales
with the resolution the number was written at: d is the count of digits
after the decimal point as written, so `about 7.2` reads as 7.2 +- 0.2
while `about 7.20` reads as 7.20 +- 0.02.  `K out of N` is the one hedge
that produces a confidence box rather than an interval.
"""

from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .distributions import kn_cbox
from .errors import MalformedHedge
from .interval import INF, Interval
from .pbox import DEFAULT_STEPS

HEDGE_WORDS = (
    "about",
    "around",
    "count",
    "almost",
    "over",
    "above",
    "below",
    "at most",
    "at least",
    "order",
    "between",
    "out of",
)


def _parse_number(x) -> tuple[Fraction, int]:
    """Value and digits-after-decimal-point of a number as written."""
    text = x if isinstance(x, str) else repr(x)
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise MalformedHedge(f"not a number: {x!r}") from None
    exponent = d.as_tuple().exponent
    if not isinstance(exponent, int):
        raise MalformedHedge(f"not a finite number: {x!r}")
    # exponent -1 means one digit after the point; a positive exponent
    # (scientific notation) coarsens the tick the same way.
    return Fraction(d), -exponent


def _tick(decimals: int) -> Fraction:
    return Fraction(10) ** (-decimals)


def hedge(word: str, x, y=None, steps: int = DEFAULT_STEPS):
    """Interpret a hedge phrase; returns an Interval or (for counts) a PBox.

    x and y may be given as strings to preserve how they were written;
    numeric values fall back to their shortest decimal representation.
    """
    word = " ".join(word.lower().split())
    if word == "between":
        if y is None:
            raise MalformedHedge("between needs two numbers")
        (vx, _), (vy, _) = _parse_number(x), _parse_number(y)
        if vx > vy:
            raise MalformedHedge(f"between {x} and {y}: bounds out of order")
        return Interval(float(vx), float(vy))
    if word == "out of":
        if y is None:
            raise MalformedHedge("'k out of n' needs two numbers")
        k, n = _parse_number(x)[0], _parse_number(y)[0]
        if k.denominator != 1 or n.denominator != 1:
            raise MalformedHedge(f"'k out of n' needs integers, got {x}, {y}")
        return kn_cbox(int(k), int(n), steps=steps)
    if y is not None:
        raise MalformedHedge(f"hedge {word!r} takes a single number")

    v, decimals = _parse_number(x)
    t = _tick(decimals)
    if word == "about":
        lo, hi = v - 2 * t, v + 2 * t
    elif word == "around":
        lo, hi = v - 10 * t, v + 10 * t
    elif word == "count":
        if v < 0:
            raise MalformedHedge(f"count of a negative number: {x}")
        s = math.sqrt(v)
        return Interval(float(v) - s, float(v) + s)
    elif word == "almost":
        lo, hi = v - t / 2, v
    elif word == "over":
        lo, hi = v, v + t / 2
    elif word == "above":
        lo, hi = v, v + 2 * t
    elif word == "below":
        lo, hi = v - 2 * t, v
    elif word == "at most":
        lo, hi = Fraction(0), v
    elif word == "at least":
        return Interval(float(v), INF)
    elif word == "order":
        lo, hi = v / 2, 5 * v
    else:
        raise MalformedHedge(f"unknown hedge word {word!r}")
    return Interval(float(lo), float(hi))
