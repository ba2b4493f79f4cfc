"""Tri-state truth values and comparison semantics for uncertain numbers.

Comparing two overlapping intervals cannot be resolved to a plain boolean;
the third state DUNNO stands for "cannot say".  Comparisons that come from
p-boxes additionally carry an interval bounding the probability that the
relation holds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .interval import Interval


@dataclass(frozen=True)
class Logical:
    state: str  # "true" | "false" | "dunno"
    prob: Interval | None = None

    def __post_init__(self):
        if self.state not in ("true", "false", "dunno"):
            raise ValueError(f"bad logical state {self.state!r}")
        if self.prob is not None:
            if not (0.0 <= self.prob.lo and self.prob.hi <= 1.0):
                raise ValueError(f"probability interval {self.prob} outside [0,1]")

    @property
    def is_true(self) -> bool:
        return self.state == "true"

    @property
    def is_false(self) -> bool:
        return self.state == "false"

    @property
    def is_dunno(self) -> bool:
        return self.state == "dunno"

    def __bool__(self) -> bool:
        if self.is_dunno:
            raise TypeError(
                "cannot use a DUNNO result as a plain boolean; "
                "wrap it with always(...) or sometimes(...)"
            )
        return self.is_true

    def __repr__(self) -> str:
        if self.prob is not None and self.is_dunno:
            return f"dunno{self.prob!r}"
        return self.state

    @classmethod
    def from_prob(cls, prob: Interval) -> "Logical":
        if prob.lo >= 1.0:
            return cls("true", Interval(1.0, 1.0))
        if prob.hi <= 0.0:
            return cls("false", Interval(0.0, 0.0))
        return cls("dunno", prob)


TRUE = Logical("true")
FALSE = Logical("false")
DUNNO = Logical("dunno")


def from_bool(b: bool) -> Logical:
    return TRUE if b else FALSE


def always(l: Logical) -> Logical:
    """Resolve DUNNO pessimistically: only a sure TRUE stays TRUE."""
    return TRUE if l.is_true else FALSE


def sometimes(l: Logical) -> Logical:
    """Resolve DUNNO optimistically: anything not surely FALSE is TRUE."""
    return FALSE if l.is_false else TRUE


def lnot(l: Logical) -> Logical:
    if l.is_dunno:
        prob = None
        if l.prob is not None:
            prob = Interval(1.0 - l.prob.hi, 1.0 - l.prob.lo)
        return Logical("dunno", prob)
    return FALSE if l.is_true else TRUE


# ---------------------------------------------------------------------------
# Interval comparisons.  X < Y is surely true only when the ranges are
# disjoint and left-of; surely false only when every X scenario is >= every
# Y scenario; everything in between is DUNNO.
# ---------------------------------------------------------------------------


def lt(x: Interval, y: Interval) -> Logical:
    if x.hi < y.lo:
        return TRUE
    if x.lo >= y.hi:
        return FALSE
    return DUNNO


def gt(x: Interval, y: Interval) -> Logical:
    if x.lo > y.hi:
        return TRUE
    if x.hi <= y.lo:
        return FALSE
    return DUNNO


def le(x: Interval, y: Interval) -> Logical:
    if x.hi <= y.lo:
        return TRUE
    if x.lo > y.hi:
        return FALSE
    return DUNNO


def ge(x: Interval, y: Interval) -> Logical:
    if x.lo >= y.hi:
        return TRUE
    if x.hi < y.lo:
        return FALSE
    return DUNNO


def eq(x: Interval, y: Interval) -> Logical:
    """Value equality: FALSE when the ranges are disjoint, otherwise DUNNO.

    Overlapping uncertain values can never be pronounced equal, only
    possibly equal.
    """
    if x.hi < y.lo or y.hi < x.lo:
        return FALSE
    return DUNNO


def eqq(x: Interval, y: Interval) -> Logical:
    """Form equivalence (===): identical endpoints."""
    return from_bool(x.lo == y.lo and x.hi == y.hi)


INTERVAL_CMPS = {"<": lt, ">": gt, "<=": le, ">=": ge, "==": eq, "===": eqq}


def compare(op: str, x: Interval, y: Interval) -> Logical:
    try:
        fn = INTERVAL_CMPS[op]
    except KeyError:
        raise ValueError(f"unknown comparison {op!r}") from None
    return fn(x, y)
