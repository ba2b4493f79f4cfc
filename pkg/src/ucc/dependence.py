"""Dependence kinds attached to pairs of uncertain quantities.

The one-letter codes (f, i, p, o) are what the compiler writes into
enriched source; `equal` marks same-object identity and never appears as
an explicit argument; rho(r) carries a numeric correlation-like proxy for
a configured copula family.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Dependence:
    kind: str  # frechet | independent | perfect | opposite | equal | rho
    r: float | None = None

    def __post_init__(self):
        if self.kind not in ("frechet", "independent", "perfect", "opposite", "equal", "rho"):
            raise ValueError(f"unknown dependence kind {self.kind!r}")
        if self.kind == "rho":
            if self.r is None or not -1.0 <= self.r <= 1.0:
                raise ValueError(f"rho parameter {self.r!r} outside [-1, 1]")

    def normalized(self) -> "Dependence":
        """rho(+-1) collapses to perfect/opposite, rho(0) to independent."""
        if self.kind == "rho":
            if self.r == 1.0:
                return PERFECT
            if self.r == -1.0:
                return OPPOSITE
            if self.r == 0.0:
                return INDEPENDENT
        return self

    @property
    def code(self) -> str:
        """One-letter code used in enriched source."""
        return {
            "frechet": "f",
            "independent": "i",
            "perfect": "p",
            "opposite": "o",
            "equal": "p",  # equal-in-value pairs behave comonotonically in binops
            "rho": "f",  # rho written out numerically; code only as fallback
        }[self.kind]

    def correlation_proxy(self) -> float | None:
        """Numeric stand-in used by the feasibility screen; None = unconstrained."""
        if self.kind == "frechet":
            return None
        if self.kind == "rho":
            return self.r
        return {"independent": 0.0, "perfect": 1.0, "opposite": -1.0, "equal": 1.0}[self.kind]

    def __repr__(self) -> str:
        if self.kind == "rho":
            return f"rho({self.r})"
        return self.kind


FRECHET = Dependence("frechet")
INDEPENDENT = Dependence("independent")
PERFECT = Dependence("perfect")
OPPOSITE = Dependence("opposite")
EQUAL = Dependence("equal")


_BY_NAME = {
    "frechet": FRECHET,
    "independent": INDEPENDENT,
    "perfect": PERFECT,
    "opposite": OPPOSITE,
    "equal": EQUAL,
    "f": FRECHET,
    "i": INDEPENDENT,
    "p": PERFECT,
    "o": OPPOSITE,
}


def parse_dependence(text: str) -> Dependence:
    """Parse a dependence word, one-letter code, or numeric rho."""
    word = text.strip().lower()
    if word in _BY_NAME:
        return _BY_NAME[word]
    try:
        r = float(word)
    except ValueError:
        raise ValueError(f"unknown dependence {text!r}") from None
    return Dependence("rho", r)
