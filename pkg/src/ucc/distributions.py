"""Named-distribution quantile kernels and p-box constructors.

A distribution with precise parameters discretizes to a box with
coincident bounds; interval-valued parameters produce a genuine box by
enumerating quantiles over the parameter-box corners (the supported
families are monotone in each parameter, with an interior-grid guard for
beta).  The k-out-of-n confidence box for a binomial proportion comes
from the paired beta distributions of the Clopper-Pearson construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .interval import Interval
from .pbox import DEFAULT_STEPS, PBox, as_pbox, from_interval, levels, point_mass
from .special import beta_ppf, binom_ppf, norm_ppf

FAMILIES = ("uniform", "normal", "beta", "binomial")

__all__ = [
    "DistSpec",
    "quantile",
    "make_pbox",
    "kn_cbox",
    "from_interval",
    "point_mass",
    "as_pbox",
]


@dataclass(frozen=True)
class DistSpec:
    family: str
    params: tuple[Interval, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown distribution family {self.family!r}")
        object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != 2:
            raise InvalidParams(f"{self.family} takes 2 parameters, got {len(self.params)}")
        if self.family == "normal" and self.params[1].lo <= 0:
            raise InvalidParams("normal sigma must be positive")
        if self.family == "beta" and (self.params[0].lo <= 0 or self.params[1].lo <= 0):
            raise InvalidParams("beta shape parameters must be positive")
        if self.family == "binomial":
            n = self.params[0]
            p = self.params[1]
            if n.lo < 1 or n.lo != int(n.lo) or n.hi != int(n.hi):
                raise InvalidParams("binomial n must be a positive integer (or integer interval)")
            if p.lo < 0 or p.hi > 1:
                raise InvalidParams("binomial p must lie in [0, 1]")


def quantile(family: str, params, p: float) -> float:
    """Inverse CDF at level p for precise scalar parameters."""
    if not 0.0 < p < 1.0:
        raise InvalidParams(f"quantile level {p} outside (0, 1)")
    a, b = (float(v) for v in params)
    if family == "uniform":
        if b < a:
            raise InvalidParams(f"uniform bounds out of order: [{a}, {b}]")
        return a + p * (b - a)
    if family == "normal":
        if b <= 0:
            raise InvalidParams("normal sigma must be positive")
        return a + b * norm_ppf(p)
    if family == "beta":
        return beta_ppf(p, a, b)
    if family == "binomial":
        n = int(a)
        if n < 1 or n != a:
            raise InvalidParams("binomial n must be a positive integer")
        return float(binom_ppf(p, n, b))
    raise InvalidParams(f"unknown distribution family {family!r}")


def _param_corners(spec: DistSpec) -> list[tuple[float, ...]]:
    axes = []
    for j, prm in enumerate(spec.params):
        if prm.is_degenerate:
            axes.append([prm.lo])
        elif spec.family == "binomial" and j == 0:
            axes.append([float(n) for n in range(int(prm.lo), int(prm.hi) + 1)])
        elif spec.family == "beta":
            # Monotonicity in the beta shapes is not relied upon: sample a
            # coarse interior grid in addition to the endpoints.
            axes.append(list(np.linspace(prm.lo, prm.hi, 5)))
        else:
            axes.append([prm.lo, prm.hi])
    return list(itertools.product(*axes))


def make_pbox(spec: DistSpec, n: int = DEFAULT_STEPS) -> PBox:
    corners = _param_corners(spec)
    if spec.family == "uniform":
        # Overlapping endpoint intervals: keep only corners with a <= b.
        corners = [c for c in corners if c[0] <= c[1]]
        if not corners:
            raise InvalidParams("uniform parameter intervals admit no valid (a, b) pair")
    ps = levels(n)
    qs = np.empty((len(corners), n))
    for ci, corner in enumerate(corners):
        for i, p in enumerate(ps):
            qs[ci, i] = quantile(spec.family, corner, p)
    left = qs.min(axis=0)
    right = qs.max(axis=0)
    kind = "distribution" if len(corners) == 1 else "pbox"
    return PBox(left, right, kind=kind)


def kn_cbox(k: int, n: int, steps: int = DEFAULT_STEPS) -> PBox:
    """Confidence box for a binomial proportion after k successes in n trials.

    Bounds are the beta(k, n-k+1) and beta(k+1, n-k) quantile curves; the
    degenerate shape parameter at k = 0 or k = n collapses that side to a
    point mass at 0 or 1.
    """
    if not (isinstance(k, int) and isinstance(n, int)) or not 0 <= k <= n or n < 1:
        raise InvalidParams(f"need integer 0 <= k <= n, n >= 1; got k={k}, n={n}")
    ps = levels(steps)
    if k == 0:
        left = np.zeros(steps)
    else:
        left = np.array([beta_ppf(p, k, n - k + 1) for p in ps])
    if k == n:
        right = np.ones(steps)
    else:
        right = np.array([beta_ppf(p, k + 1, n - k) for p in ps])
    return PBox(left, right, kind="cbox")
