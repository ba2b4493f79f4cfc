"""Probability boxes: paired quantile bounds on an unknown distribution.

A PBox stores two nondecreasing quantile arrays sampled at the midpoint
probability levels p_i = (i + 0.5) / N:

- ``left``  holds quantiles of the upper CDF bound (the left edge of the
  box when plotted as a CDF),
- ``right`` holds quantiles of the lower CDF bound.

Every distribution consistent with the box has its quantile function
between the two arrays.  Precise distributions have left == right;
a bare interval is the vacuous box with constant arrays.

Arithmetic follows the dependence requested for the operand pair:

- perfect / opposite pair probability slabs index-by-index (reversed for
  opposite) and hull each slab pair,
- independence forms the full N x N slab grid and condenses outward,
- no assumption (Frechet) uses the classical convolution bounds in their
  discrete dual-quantile form,
- rho(r) reweights the slab grid with a Gaussian copula.

Multiplication and division route through logs / reciprocals on
sign-definite supports; a genuinely zero-straddling support under
Frechet/independence falls back to the (sound, loose) support hull with
a diagnostic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import interval as ivl
from .dependence import Dependence, FRECHET, OPPOSITE, PERFECT
from .errors import DivisionByUncertainZero, DomainError, EmptyIntersection, UccWarning
from .interval import Interval
from .logic import Logical
from .special import gaussian_copula_cdf

DEFAULT_STEPS = 200


def levels(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


@dataclass(frozen=True)
class PBox:
    left: np.ndarray
    right: np.ndarray
    kind: str = "pbox"  # distribution | pbox | cbox
    ensemble: str | None = None

    def __post_init__(self):
        left = np.asarray(self.left, dtype=float)
        right = np.asarray(self.right, dtype=float)
        if left.shape != right.shape or left.ndim != 1 or left.size < 1:
            raise ValueError("quantile arrays must be equal-length 1-D")
        if np.any(np.diff(left) < 0) or np.any(np.diff(right) < 0):
            raise ValueError("quantile arrays must be nondecreasing")
        if np.any(left > right):
            raise ValueError("left quantile bound above right bound")
        if self.kind not in ("distribution", "pbox", "cbox"):
            raise ValueError(f"unknown p-box kind {self.kind!r}")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def steps(self) -> int:
        return self.left.size

    @property
    def support(self) -> Interval:
        return Interval(float(self.left[0]), float(self.right[-1]))

    @property
    def is_point_mass(self) -> bool:
        return self.left[0] == self.right[-1]

    def mean_bounds(self) -> Interval:
        return Interval(float(self.left.mean()), float(self.right.mean()))

    def cdf_bounds(self, z: float) -> Interval:
        """Interval bounding Pr(X <= z)."""
        n = self.steps
        upper = float(np.count_nonzero(self.left <= z)) / n
        lower = float(np.count_nonzero(self.right <= z)) / n
        return Interval(lower, upper)

    def quantile_bounds(self, p: float) -> Interval:
        """Interval bounding the p-quantile, interpolating between levels."""
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile level {p} outside (0, 1)")
        ps = levels(self.steps)
        lo = float(np.interp(p, ps, self.left))
        hi = float(np.interp(p, ps, self.right))
        return Interval(lo, hi)

    def prob_below(self, z: float, strict: bool = True) -> Interval:
        """Interval bounding Pr(X < z) (or <= z when strict=False)."""
        n = self.steps
        if strict:
            upper = float(np.count_nonzero(self.left < z)) / n
            lower = float(np.count_nonzero(self.right < z)) / n
        else:
            upper = float(np.count_nonzero(self.left <= z)) / n
            lower = float(np.count_nonzero(self.right <= z)) / n
        return Interval(lower, upper)

    def encloses(self, other: "PBox", slack: float = 0.0) -> bool:
        a, b = _align(self, other)
        return bool(np.all(a.left <= b.left + slack) and np.all(a.right >= b.right - slack))

    def __repr__(self) -> str:
        s = self.support
        return f"<{self.kind} n={self.steps} support=[{s.lo:.6g}, {s.hi:.6g}]>"


def point_mass(v: float, n: int = DEFAULT_STEPS) -> PBox:
    arr = np.full(n, float(v))
    return PBox(arr, arr.copy(), kind="distribution")


def from_interval(x: Interval, n: int = DEFAULT_STEPS) -> PBox:
    """Vacuous p-box: no distributional information beyond the support."""
    if x.is_degenerate:
        return point_mass(x.lo, n)
    return PBox(np.full(n, x.lo), np.full(n, x.hi), kind="pbox")


def as_pbox(v, n: int = DEFAULT_STEPS) -> PBox:
    if isinstance(v, PBox):
        return v
    if isinstance(v, Interval):
        return from_interval(v, n)
    return point_mass(float(v), n)


def _resample(x: PBox, n: int) -> PBox:
    """Outward resampling to n levels (exact when refining)."""
    if x.steps == n:
        return x
    k = np.arange(n)
    li = (k * x.steps) // n
    ri = -(-((k + 1) * x.steps) // n) - 1  # ceil((k+1)*steps/n) - 1
    return PBox(x.left[li], x.right[ri], kind=x.kind, ensemble=x.ensemble)


def _align(x: PBox, y: PBox) -> tuple[PBox, PBox]:
    n = max(x.steps, y.steps)
    return _resample(x, n), _resample(y, n)


def _result_kind(x: PBox, y: PBox, dep: Dependence) -> str:
    if x.kind == "distribution" and y.kind == "distribution":
        # Frechet keeps distributions precise only against a point mass.
        if dep.kind != "frechet" or x.is_point_mass or y.is_point_mass:
            return "distribution"
    return "pbox"


# ---------------------------------------------------------------------------
# Slab-paired combination (perfect / opposite) and grid combination
# (independent / rho).
# ---------------------------------------------------------------------------


def _paired_corners(op: str, x: PBox, y: PBox, reverse: bool):
    xl, xr = x.left, x.right
    yl, yr = (y.left[::-1], y.right[::-1]) if reverse else (y.left, y.right)
    if op == "+":
        lo, hi = xl + yl, xr + yr
    elif op == "*":
        cands = np.stack([xl * yl, xl * yr, xr * yl, xr * yr])
        lo, hi = cands.min(axis=0), cands.max(axis=0)
    else:
        raise ValueError(f"unsupported paired op {op!r}")
    return np.sort(lo), np.sort(hi)


def _weighted_grid(op, x: PBox, y: PBox, mass: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Condense an N x N slab grid with per-cell masses to N outward levels."""
    n = x.steps
    if op == "+":
        lo = np.add.outer(x.left, y.left).ravel()
        hi = np.add.outer(x.right, y.right).ravel()
    elif op == "*":
        lo = np.multiply.outer(x.left, y.left).ravel()
        hi = np.multiply.outer(x.right, y.right).ravel()
    else:
        raise ValueError(f"unsupported grid op {op!r}")
    m = mass.ravel()
    m = m / m.sum()

    order = np.argsort(lo, kind="stable")
    cum = np.cumsum(m[order])
    # Left bound: quantile at the bottom of each slab, from below.
    targets = np.arange(n) / n
    idx = np.searchsorted(cum, targets, side="right")
    idx = np.clip(idx, 0, lo.size - 1)
    left = lo[order][idx]

    order = np.argsort(hi, kind="stable")
    cum = np.cumsum(m[order])
    targets = (np.arange(n) + 1) / n
    idx = np.searchsorted(cum, np.minimum(targets, cum[-1]), side="left")
    idx = np.clip(idx, 0, hi.size - 1)
    right = hi[order][idx]
    left = np.minimum(left, right)
    return np.maximum.accumulate(left), np.maximum.accumulate(right)


def _uniform_mass(n: int) -> np.ndarray:
    return np.full((n, n), 1.0 / (n * n))


def _copula_mass(n: int, r: float) -> np.ndarray:
    grid = np.arange(n + 1) / n
    u, v = np.meshgrid(grid, grid, indexing="ij")
    c = gaussian_copula_cdf(u, v, r)
    mass = c[1:, 1:] - c[:-1, 1:] - c[1:, :-1] + c[:-1, :-1]
    return np.clip(mass, 0.0, None)


def _frechet_add(x: PBox, y: PBox) -> tuple[np.ndarray, np.ndarray]:
    """Discrete dual-quantile form of the no-assumption convolution."""
    n = x.steps
    xl, xr, yl, yr = x.left, x.right, y.left, y.right
    left = np.empty(n)
    right = np.empty(n)
    yr_rev = yr[::-1]
    for k in range(n):
        left[k] = np.max(xl[: k + 1] + yl[k::-1])
        right[k] = np.min(xr[k:] + yr_rev[: n - k])
    return left, right


def conv_add(x: PBox, y: PBox, dep: Dependence) -> PBox:
    x, y = _align(x, y)
    dep = dep.normalized()
    kind = _result_kind(x, y, dep)
    if dep.kind == "perfect":
        left, right = _paired_corners("+", x, y, reverse=False)
    elif dep.kind == "opposite":
        left, right = _paired_corners("+", x, y, reverse=True)
    elif dep.kind == "independent":
        left, right = _weighted_grid("+", x, y, _uniform_mass(x.steps))
    elif dep.kind == "rho":
        left, right = _weighted_grid("+", x, y, _copula_mass(x.steps, dep.r))
    else:
        left, right = _frechet_add(x, y)
    return PBox(left, right, kind=kind)


def pbox_neg(x: PBox) -> PBox:
    return PBox(-x.right[::-1], -x.left[::-1], kind=x.kind, ensemble=x.ensemble)


def _dep_for_transformed(dep: Dependence) -> Dependence:
    """Swap perfect and opposite when an operand went through a decreasing map."""
    dep = dep.normalized()
    if dep.kind == "perfect":
        return OPPOSITE
    if dep.kind == "opposite":
        return PERFECT
    if dep.kind == "rho":
        return Dependence("rho", -dep.r)
    return dep


def conv_sub(x: PBox, y: PBox, dep: Dependence) -> PBox:
    return conv_add(x, pbox_neg(y), _dep_for_transformed(dep))


def _scale(k: float, x: PBox) -> PBox:
    if k >= 0:
        return PBox(k * x.left, k * x.right, kind=x.kind, ensemble=x.ensemble)
    return pbox_neg(_scale(-k, x))


def _shift(c: float, x: PBox) -> PBox:
    return PBox(x.left + c, x.right + c, kind=x.kind, ensemble=x.ensemble)


def _log_box(x: PBox) -> PBox:
    with np.errstate(divide="ignore"):
        return PBox(np.log(x.left), np.log(x.right), kind=x.kind)


def conv_mul(x: PBox, y: PBox, dep: Dependence) -> PBox:
    x, y = _align(x, y)
    dep = dep.normalized()
    kind = _result_kind(x, y, dep)

    if x.is_point_mass:
        return _scale(float(x.left[0]), y)
    if y.is_point_mass:
        return _scale(float(y.left[0]), x)

    if dep.kind == "perfect":
        left, right = _paired_corners("*", x, y, reverse=False)
        return PBox(left, right, kind=kind)
    if dep.kind == "opposite":
        left, right = _paired_corners("*", x, y, reverse=True)
        return PBox(left, right, kind=kind)

    # Frechet / independent / rho: reduce to nonnegative supports.
    xs, ys = x.support, y.support
    if xs.hi <= 0.0:
        return pbox_neg(conv_mul(pbox_neg(x), y, _dep_for_transformed(dep)))
    if ys.hi <= 0.0:
        return pbox_neg(conv_mul(x, pbox_neg(y), _dep_for_transformed(dep)))
    if xs.lo < 0.0 or ys.lo < 0.0:
        hullv = ivl.mul(xs, ys)
        warnings.warn(
            f"multiplication under {dep} on zero-straddling supports "
            f"{xs} x {ys}: falling back to the support hull {hullv}",
            UccWarning,
            stacklevel=2,
        )
        return from_interval(hullv, x.steps)

    lx, ly = _log_box(x), _log_box(y)
    if dep.kind == "independent":
        left, right = _weighted_grid("+", lx, ly, _uniform_mass(x.steps))
    elif dep.kind == "rho":
        left, right = _weighted_grid("+", lx, ly, _copula_mass(x.steps, dep.r))
    else:
        left, right = _frechet_add(lx, ly)
        kind = "pbox"
    # The log/exp roundtrip costs a few ulps of outwardness; widen, then
    # clip back to the exact support hull so plain products stay exact.
    left = np.exp(left) * (1.0 - 1e-15)
    right = np.exp(right) * (1.0 + 1e-15)
    hullv = ivl.mul(xs, ys)
    return PBox(np.maximum(left, hullv.lo), np.minimum(right, hullv.hi), kind=kind)


def pbox_recip(x: PBox) -> PBox:
    s = x.support
    if s.straddles_zero():
        raise DivisionByUncertainZero(f"reciprocal of p-box with support {s}")
    return PBox(1.0 / x.right[::-1], 1.0 / x.left[::-1], kind=x.kind)


def conv_div(x: PBox, y: PBox, dep: Dependence) -> PBox:
    return conv_mul(x, pbox_recip(y), _dep_for_transformed(dep))


_CONVS = {"+": conv_add, "-": conv_sub, "*": conv_mul, "/": conv_div}


def binop(op: str, x: PBox, y: PBox, dep: Dependence = FRECHET) -> PBox:
    try:
        fn = _CONVS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(x, y, dep)


def self_binop(op: str, x: PBox) -> PBox:
    """x op x where both operands are the same object (equal dependence)."""
    if op == "+":
        return _scale(2.0, x)
    if op == "-":
        return point_mass(0.0, x.steps)
    if op == "*":
        return pbox_pow_int(x, 2)
    if op == "/":
        if x.support.straddles_zero():
            raise DivisionByUncertainZero(f"x/x with 0 in support {x.support}")
        return point_mass(1.0, x.steps)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Function lifting.
# ---------------------------------------------------------------------------

_MONOTONE_UP = {"exp", "ln", "sqrt", "arctan"}


def apply_fn(name: str, x: PBox, diagnostics: list | None = None) -> PBox:
    """Lift a unary function over the box, level-wise.

    Monotone increasing functions map the bound arrays directly; anything
    else hulls each probability slab through the interval kernel and
    restores monotonicity by sorting (the focal elements are unordered).
    """
    if name == "neg":
        return pbox_neg(x)
    lo = np.empty(x.steps)
    hi = np.empty(x.steps)
    for i in range(x.steps):
        slab = Interval(x.left[i], x.right[i])
        j = ivl.sqrt(slab, diagnostics=diagnostics) if name == "sqrt" else ivl.apply_unary(name, slab)
        lo[i], hi[i] = j.lo, j.hi
    if name in _MONOTONE_UP:
        return PBox(lo, hi, kind=x.kind, ensemble=x.ensemble)
    return PBox(np.sort(lo), np.sort(hi), kind=x.kind, ensemble=x.ensemble)


def pbox_pow_int(x: PBox, k: int) -> PBox:
    lo = np.empty(x.steps)
    hi = np.empty(x.steps)
    for i in range(x.steps):
        j = ivl.pow_int(Interval(x.left[i], x.right[i]), k)
        lo[i], hi[i] = j.lo, j.hi
    if k >= 0 and k % 2 == 1:
        return PBox(lo, hi, kind=x.kind)
    return PBox(np.sort(lo), np.sort(hi), kind=x.kind)


def pbox_pow(x: PBox, k: float) -> PBox:
    if float(k).is_integer():
        return pbox_pow_int(x, int(k))
    if x.support.lo <= 0.0:
        raise DomainError(f"non-integer power of p-box with support {x.support}")
    if k > 0:
        left, right = k * np.log(x.left), k * np.log(x.right)
    else:
        left, right = k * np.log(x.right[::-1]), k * np.log(x.left[::-1])
    left = np.exp(left) * (1.0 - 1e-15)
    right = np.exp(right) * (1.0 + 1e-15)
    hullv = ivl.pow_real(x.support, k)
    return PBox(np.maximum(left, hullv.lo), np.minimum(right, hullv.hi), kind=x.kind)


# ---------------------------------------------------------------------------
# Comparison and intersection.
# ---------------------------------------------------------------------------


def compare(op: str, x: PBox, y: PBox, dep: Dependence = FRECHET) -> Logical:
    """Probability-bounded comparison via the difference box."""
    if op in ("<", "<="):
        d = conv_sub(x, y, dep)
        prob = d.prob_below(0.0, strict=(op == "<"))
    elif op in (">", ">="):
        d = conv_sub(y, x, dep)
        prob = d.prob_below(0.0, strict=(op == ">"))
    else:
        raise ValueError(f"unsupported p-box comparison {op!r}")
    return Logical.from_prob(prob)


def intersect(x: PBox, y: PBox) -> PBox:
    x, y = _align(x, y)
    left = np.maximum(x.left, y.left)
    right = np.minimum(x.right, y.right)
    if np.any(left > right):
        raise EmptyIntersection("p-box enclosures do not overlap at all levels")
    kind = "cbox" if "cbox" in (x.kind, y.kind) else ("distribution" if x.kind == y.kind == "distribution" else "pbox")
    return PBox(left, right, kind=kind)
