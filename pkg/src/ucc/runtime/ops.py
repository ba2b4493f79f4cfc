"""Value-level operation dispatch for the evaluator.

Values are plain Python numbers, Interval, PBox, Logical or lists.
Mixed-kind arithmetic promotes numbers to degenerate intervals or point
masses as needed; the promotion never loses enclosure.  Two operands
that are the *same object* (an aliased variable used twice) are the same
quantity, so x - x is exactly zero and x * x squares, regardless of the
dependence code written at the call site.
"""

from __future__ import annotations

import math

from .. import interval as ivl
from .. import logic
from .. import pbox as pb
from ..dependence import Dependence, EQUAL, FRECHET, PERFECT, parse_dependence
from ..errors import UccRuntimeError
from ..interval import Interval
from ..logic import Logical
from ..pbox import PBox

Number = (int, float)


def parse_dep_arg(dep) -> Dependence:
    if dep is None:
        return FRECHET
    if isinstance(dep, Dependence):
        return dep
    if isinstance(dep, Number):
        return Dependence("rho", float(dep)).normalized()
    if isinstance(dep, str):
        if dep == "e":
            return EQUAL
        return parse_dependence(dep)
    raise UccRuntimeError(f"bad dependence argument {dep!r}")


def _self_interval(op: str, x: Interval) -> Interval:
    if op == "+":
        return ivl.scale(2.0, x)
    if op == "-":
        return Interval(0.0, 0.0)
    if op == "*":
        return ivl.square(x)
    if op == "/":
        if x.straddles_zero():
            from ..errors import DivisionByUncertainZero

            raise DivisionByUncertainZero(f"x/x with 0 in {x}")
        return Interval(1.0, 1.0)
    raise UccRuntimeError(f"unknown operation {op!r}")


def binop(op: str, l, r, dep=None, steps: int = pb.DEFAULT_STEPS):
    if isinstance(l, Number) and isinstance(r, Number):
        if op == "+":
            return l + r
        if op == "-":
            return l - r
        if op == "*":
            return l * r
        if op == "/":
            if r == 0:
                raise UccRuntimeError("division by zero")
            return l / r
        raise UccRuntimeError(f"unknown operation {op!r}")

    d = parse_dep_arg(dep)

    if l is r:
        if isinstance(l, Interval):
            return _self_interval(op, l)
        if isinstance(l, PBox):
            return pb.self_binop(op, l)

    if d.kind == "equal":
        # Declared same-in-value: degenerate to the self path on the left
        # operand (falls back to comonotone if the bounds disagree).
        if isinstance(l, Interval) and isinstance(r, Interval) and l == r:
            return _self_interval(op, l)
        if isinstance(l, PBox) and isinstance(r, PBox) and l.steps == r.steps and (
            (l.left == r.left).all() and (l.right == r.right).all()
        ):
            return pb.self_binop(op, l)
        d = PERFECT

    if isinstance(l, PBox) or isinstance(r, PBox):
        n = l.steps if isinstance(l, PBox) else r.steps
        return pb.binop(op, pb.as_pbox(l, n), pb.as_pbox(r, n), d)
    if isinstance(l, Interval) or isinstance(r, Interval):
        return ivl.binop(op, _as_interval(l), _as_interval(r), d.code)
    raise UccRuntimeError(f"cannot {op!r} values {l!r} and {r!r}")


def _as_interval(v) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, Number):
        return Interval.point(float(v))
    raise UccRuntimeError(f"expected a numeric value, got {v!r}")


def power(x, k):
    if isinstance(k, (Interval, PBox)):
        if isinstance(k, Interval) and k.is_degenerate:
            k = k.lo
        else:
            raise UccRuntimeError("uncertain exponents are not supported")
    if isinstance(x, Number) and isinstance(k, Number):
        return x**k
    if isinstance(x, Interval):
        return ivl.pow_real(x, float(k))
    if isinstance(x, PBox):
        return pb.pbox_pow(x, float(k))
    raise UccRuntimeError(f"cannot raise {x!r} to {k!r}")


def negate(x):
    if isinstance(x, Number):
        return -x
    if isinstance(x, Interval):
        return ivl.neg(x)
    if isinstance(x, PBox):
        return pb.pbox_neg(x)
    raise UccRuntimeError(f"cannot negate {x!r}")


_IDENTITY_CMP = {"<": logic.FALSE, ">": logic.FALSE, "<=": logic.TRUE, ">=": logic.TRUE, "==": logic.TRUE, "===": logic.TRUE}


def compare(op: str, l, r, dep=None, steps: int = pb.DEFAULT_STEPS):
    if isinstance(l, Number) and isinstance(r, Number):
        return {
            "<": l < r,
            ">": l > r,
            "<=": l <= r,
            ">=": l >= r,
            "==": l == r,
            "===": l == r,
        }[op]
    d = parse_dep_arg(dep)
    if l is r and isinstance(l, (Interval, PBox)):
        return _IDENTITY_CMP[op]
    if isinstance(l, PBox) or isinstance(r, PBox):
        n = l.steps if isinstance(l, PBox) else r.steps
        lp, rp = pb.as_pbox(l, n), pb.as_pbox(r, n)
        if op == "===":
            same = lp.steps == rp.steps and (lp.left == rp.left).all() and (lp.right == rp.right).all()
            return logic.from_bool(same)
        if op == "==":
            return logic.eq(lp.support, rp.support)
        return pb.compare(op, lp, rp, d)
    return logic.compare(op, _as_interval(l), _as_interval(r))


def apply_unary(name: str, x, diagnostics: list | None = None):
    if isinstance(x, Number):
        fn = {
            "exp": math.exp,
            "ln": math.log,
            "sqrt": math.sqrt,
            "sin": math.sin,
            "cos": math.cos,
            "tan": math.tan,
            "arctan": math.atan,
            "square": lambda v: v * v,
            "abs": abs,
        }[name]
        return fn(x)
    if isinstance(x, Interval):
        if name == "sqrt":
            return ivl.sqrt(x, diagnostics=diagnostics)
        return ivl.apply_unary(name, x)
    if isinstance(x, PBox):
        return pb.apply_fn(name, x, diagnostics=diagnostics)
    raise UccRuntimeError(f"cannot apply {name} to {x!r}")


def intersect_values(l, r):
    if isinstance(l, Number) and isinstance(r, Number):
        if l == r:
            return l
        from ..errors import EmptyIntersection

        raise EmptyIntersection(f"{l} and {r} differ")
    if isinstance(l, PBox) or isinstance(r, PBox):
        n = l.steps if isinstance(l, PBox) else r.steps
        return pb.intersect(pb.as_pbox(l, n), pb.as_pbox(r, n))
    return ivl.intersect(_as_interval(l), _as_interval(r))


def fresh(x):
    """A distinct object with the same uncertainty (breaks aliasing)."""
    if isinstance(x, Interval):
        return Interval(x.lo, x.hi)
    if isinstance(x, PBox):
        return PBox(x.left.copy(), x.right.copy(), kind=x.kind, ensemble=x.ensemble)
    return x


def truthiness(v) -> str:
    """'true' | 'false' | 'dunno' for a conditional value."""
    if isinstance(v, Logical):
        return v.state
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Number):
        return "true" if v != 0 else "false"
    raise UccRuntimeError(f"bad condition value {v!r}")
