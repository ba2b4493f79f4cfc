"""Closed intervals on the extended reals, with outward rounding.

An interval [lo, hi] bounds an imprecisely known value; every operation
returns an interval guaranteed to contain all results obtainable from
values consistent with the inputs.  Soundness of the endpoints is kept
in two ways:

- The four basic operations (and integer powers) are evaluated exactly
  in rational arithmetic and the endpoints are then rounded outward, so
  results that are representable in binary floating point are *exact*
  ([2,3] * [4,5] really is [8.0, 15.0]).
- Library functions (exp, sin, ...) get a one-ulp outward widening of
  each endpoint, which covers faithfully-rounded libm implementations,
  and the result is clipped to the function's range where one exists.

Infinite endpoints propagate by extended-real arithmetic; an operation
that would need inf - inf raises rather than produce NaN bounds.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByUncertainZero, DomainError, EmptyIntersection

INF = math.inf
_MAX = sys.float_info.max

_SQRT_POLICY_STRICT = False


def set_sqrt_policy(strict: bool) -> None:
    """Select behaviour of sqrt on partially negative intervals.

    Default (strict=False) clamps the negative part to zero and reports a
    diagnostic; strict=True raises DomainError instead.
    """
    global _SQRT_POLICY_STRICT
    _SQRT_POLICY_STRICT = bool(strict)


# ---------------------------------------------------------------------------
# Exact endpoint arithmetic: endpoints are Fractions (finite) or +-inf
# floats, combined without rounding, then converted outward to floats.
# ---------------------------------------------------------------------------


def _exact(v: float):
    return v if math.isinf(v) else Fraction(v)


def _to_float(x, up: bool) -> float:
    if isinstance(x, float):
        return x
    try:
        f = float(x)
    except OverflowError:
        f = INF if x > 0 else -INF
    if math.isinf(f):
        # Overflowed toward the wrong direction: clamp to the largest finite.
        return f if up == (f > 0) else math.copysign(_MAX, f)
    fx = Fraction(f)
    if up:
        return f if fx >= x else math.nextafter(f, INF)
    return f if fx <= x else math.nextafter(f, -INF)


def _eadd(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    r = (a if isinstance(a, float) else 0.0) + (b if isinstance(b, float) else 0.0)
    if math.isnan(r):
        raise DomainError("inf - inf in interval endpoint arithmetic")
    return r


def _eneg(a):
    return -a


def _emul(a, b):
    if a == 0 or b == 0:
        # 0 * inf -> 0 is the sound convention for endpoint candidates.
        return Fraction(0)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    return INF if (a > 0) == (b > 0) else -INF


def _erecip(a):
    if isinstance(a, float):
        return Fraction(0)
    return 1 / a


def _from_exact(lo, hi) -> Interval:
    return Interval(_to_float(lo, up=False), _to_float(hi, up=True))


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoint is NaN")
        if lo > hi:
            raise ValueError(f"interval bounds out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, v) -> "Interval":
        return cls(float(v), float(v))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2.0

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, v: float) -> bool:
        return self.lo <= v <= self.hi

    def straddles_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"

    # Infix operators use the no-assumption (Frechet) semantics; the
    # dependence-aware entry point is binop().
    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)


def _coerce(v) -> Interval:
    if isinstance(v, Interval):
        return v
    return Interval.point(v)


def add(x: Interval, y: Interval) -> Interval:
    return _from_exact(_eadd(_exact(x.lo), _exact(y.lo)), _eadd(_exact(x.hi), _exact(y.hi)))


def sub(x: Interval, y: Interval) -> Interval:
    return _from_exact(
        _eadd(_exact(x.lo), _eneg(_exact(y.hi))),
        _eadd(_exact(x.hi), _eneg(_exact(y.lo))),
    )


def mul(x: Interval, y: Interval) -> Interval:
    xl, xh, yl, yh = _exact(x.lo), _exact(x.hi), _exact(y.lo), _exact(y.hi)
    cands = [_emul(xl, yl), _emul(xl, yh), _emul(xh, yl), _emul(xh, yh)]
    return _from_exact(min(cands), max(cands))


def div(x: Interval, y: Interval) -> Interval:
    if y.straddles_zero():
        raise DivisionByUncertainZero(f"divisor {y} contains zero")
    rl, rh = _erecip(_exact(y.hi)), _erecip(_exact(y.lo))
    xl, xh = _exact(x.lo), _exact(x.hi)
    cands = [_emul(xl, rl), _emul(xl, rh), _emul(xh, rl), _emul(xh, rh)]
    return _from_exact(min(cands), max(cands))


def neg(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def absolute(x: Interval) -> Interval:
    if x.lo >= 0:
        return x
    if x.hi <= 0:
        return neg(x)
    return Interval(0.0, max(-x.lo, x.hi))


def scale(k: float, x: Interval) -> Interval:
    return mul(Interval.point(k), x)


def square(x: Interval) -> Interval:
    """x**2 treating both factors as the same quantity (never negative)."""
    return pow_int(x, 2)


def pow_int(x: Interval, k: int) -> Interval:
    if k == 0:
        return Interval(1.0, 1.0)
    if k < 0:
        return div(Interval(1.0, 1.0), pow_int(x, -k))

    def p(e: float):
        if math.isinf(e):
            return INF if (e > 0 or k % 2 == 0) else -INF
        return Fraction(e) ** k

    if k % 2 == 1:
        return _from_exact(p(x.lo), p(x.hi))
    lo_p, hi_p = p(abs(x.lo)), p(abs(x.hi))
    if x.straddles_zero():
        return _from_exact(Fraction(0), max(lo_p, hi_p))
    return _from_exact(min(lo_p, hi_p), max(lo_p, hi_p))


def pow_real(x: Interval, k: float) -> Interval:
    """x**k; integer k goes through pow_int, otherwise exp(k ln x), x > 0."""
    if float(k).is_integer():
        return pow_int(x, int(k))
    return exp(scale(k, ln(x)))


def _widen(lo: float, hi: float, range_lo=-INF, range_hi=INF) -> Interval:
    lo = math.nextafter(lo, -INF) if math.isfinite(lo) else lo
    hi = math.nextafter(hi, INF) if math.isfinite(hi) else hi
    return Interval(max(lo, range_lo), min(hi, range_hi))


def exp(x: Interval) -> Interval:
    lo = 0.0 if x.lo == -INF else math.exp(min(x.lo, 709.0))
    hi = INF if x.hi > 709.0 else math.exp(x.hi)
    return _widen(lo, hi, range_lo=0.0)


def ln(x: Interval) -> Interval:
    if x.lo <= 0.0:
        raise DomainError(f"ln of interval {x} with nonpositive support")
    lo = math.log(x.lo)
    hi = INF if x.hi == INF else math.log(x.hi)
    return _widen(lo, hi)


def sqrt(x: Interval, diagnostics: list | None = None) -> Interval:
    if x.hi < 0.0:
        raise DomainError(f"sqrt of entirely negative interval {x}")
    lo = x.lo
    if lo < 0.0:
        if _SQRT_POLICY_STRICT:
            raise DomainError(f"sqrt of interval {x} straddling negatives (strict policy)")
        if diagnostics is not None:
            diagnostics.append(f"sqrt: clamped negative part of {x} to 0")
        lo = 0.0
    hi = INF if x.hi == INF else math.sqrt(x.hi)
    return _widen(math.sqrt(lo), hi, range_lo=0.0)


_HALF_PI = math.pi / 2.0
_TWO_PI = 2.0 * math.pi


def _extremum_inside(lo: float, hi: float, offset: float) -> bool:
    # Is offset + 2*pi*n inside [lo, hi] for some integer n?
    n_min = math.ceil((lo - offset) / _TWO_PI)
    n_max = math.floor((hi - offset) / _TWO_PI)
    return n_min <= n_max


def sin(x: Interval) -> Interval:
    if not (math.isfinite(x.lo) and math.isfinite(x.hi)) or x.width >= _TWO_PI:
        return Interval(-1.0, 1.0)
    vlo, vhi = math.sin(x.lo), math.sin(x.hi)
    lo, hi = min(vlo, vhi), max(vlo, vhi)
    if _extremum_inside(x.lo, x.hi, _HALF_PI):
        hi = 1.0
    if _extremum_inside(x.lo, x.hi, -_HALF_PI):
        lo = -1.0
    return _widen(lo, hi, range_lo=-1.0, range_hi=1.0)


def cos(x: Interval) -> Interval:
    if not (math.isfinite(x.lo) and math.isfinite(x.hi)) or x.width >= _TWO_PI:
        return Interval(-1.0, 1.0)
    vlo, vhi = math.cos(x.lo), math.cos(x.hi)
    lo, hi = min(vlo, vhi), max(vlo, vhi)
    if _extremum_inside(x.lo, x.hi, 0.0):
        hi = 1.0
    if _extremum_inside(x.lo, x.hi, math.pi):
        lo = -1.0
    return _widen(lo, hi, range_lo=-1.0, range_hi=1.0)


def tan(x: Interval) -> Interval:
    if not (math.isfinite(x.lo) and math.isfinite(x.hi)) or x.width >= math.pi:
        return Interval(-INF, INF)
    # A pole pi/2 + pi*n inside the interval makes the range unbounded.
    n_min = math.ceil((x.lo - _HALF_PI) / math.pi)
    n_max = math.floor((x.hi - _HALF_PI) / math.pi)
    if n_min <= n_max:
        return Interval(-INF, INF)
    return _widen(math.tan(x.lo), math.tan(x.hi))


def arctan(x: Interval) -> Interval:
    return _widen(math.atan(x.lo), math.atan(x.hi), range_lo=-_HALF_PI, range_hi=_HALF_PI)


UNARY_FNS = {
    "exp": exp,
    "ln": ln,
    "sqrt": sqrt,
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "arctan": arctan,
    "neg": neg,
    "abs": absolute,
    "square": square,
}


def apply_unary(name: str, x: Interval) -> Interval:
    try:
        fn = UNARY_FNS[name]
    except KeyError:
        raise DomainError(f"unknown interval function {name!r}") from None
    return fn(x)


def intersect(x: Interval, y: Interval) -> Interval:
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo > hi:
        raise EmptyIntersection(f"{x} and {y} are disjoint")
    return Interval(lo, hi)


def hull(x: Interval, y: Interval) -> Interval:
    return Interval(min(x.lo, y.lo), max(x.hi, y.hi))


# ---------------------------------------------------------------------------
# Dependence-aware binary operations.
#
# Perfect / opposite dependence between intervals is read as a shared latent
# u in [0, 1] driving both values along a monotone linear sweep of each
# range: x(u) = lo + u*(hi-lo) paired with y(u), or with y(1-u).  Sums and
# quotients of these are monotone in u, products are quadratic, so candidate
# endpoints are the sweep ends plus the product's stationary point.
# Frechet and independence cannot narrow bare intervals (no distribution is
# carried), so both use the corner formulas above.
# ---------------------------------------------------------------------------


def _coupled_mul(x: Interval, y: Interval, ylo: float, yhi: float) -> Interval:
    xl, ylo_e = _exact(x.lo), _exact(ylo)
    cands = [_emul(xl, ylo_e), _emul(_exact(x.hi), _exact(yhi))]
    if all(math.isfinite(v) for v in (x.lo, x.hi, ylo, yhi)):
        wx = Fraction(x.hi) - Fraction(x.lo)
        wy = Fraction(yhi) - Fraction(ylo)
        if wx != 0 and wy != 0:
            # Vertex of the parabola u -> (xlo + wx*u)(ylo + wy*u).
            u = -(Fraction(x.lo) * wy + Fraction(ylo) * wx) / (2 * wx * wy)
            if 0 < u < 1:
                cands.append((Fraction(x.lo) + wx * u) * (Fraction(ylo) + wy * u))
    return _from_exact(min(cands), max(cands))


def _coupled(op: str, x: Interval, y: Interval, opposite: bool) -> Interval:
    ylo, yhi = (y.hi, y.lo) if opposite else (y.lo, y.hi)
    if op == "+":
        a = _eadd(_exact(x.lo), _exact(ylo))
        b = _eadd(_exact(x.hi), _exact(yhi))
        return _from_exact(min(a, b), max(a, b))
    if op == "-":
        a = _eadd(_exact(x.lo), _eneg(_exact(ylo)))
        b = _eadd(_exact(x.hi), _eneg(_exact(yhi)))
        return _from_exact(min(a, b), max(a, b))
    if op == "*":
        return _coupled_mul(x, y, ylo, yhi)
    if op == "/":
        if y.straddles_zero():
            raise DivisionByUncertainZero(f"divisor {y} contains zero")
        a = _emul(_exact(x.lo), _erecip(_exact(ylo)))
        b = _emul(_exact(x.hi), _erecip(_exact(yhi)))
        return _from_exact(min(a, b), max(a, b))
    raise ValueError(f"unknown operation {op!r}")


_PLAIN = {"+": add, "-": sub, "*": mul, "/": div}


def binop(op: str, x: Interval, y: Interval, dep: str = "f") -> Interval:
    """Dependence-aware arithmetic; dep is one of f, i, p, o.

    f (no assumption) and i (independence) coincide for bare intervals.
    """
    if dep in ("f", "i"):
        return _PLAIN[op](x, y)
    if dep == "p":
        return _coupled(op, x, y, opposite=False)
    if dep == "o":
        return _coupled(op, x, y, opposite=True)
    raise ValueError(f"unknown dependence code {dep!r}")
