"""Significant-figure intervalization of float literals.

`3.56` is read as "known to the written resolution": the half-tick
interval [3.555, 3.565].  Integers are exact; names on the constant
whitelist (user `constant` declarations; the builtins pi and e are names,
not literals) are never touched; exponents of ** stay literal so integer
power semantics survive.
"""

from __future__ import annotations

import copy
from decimal import Decimal

from ..minilang.nodes import (
    Assign,
    BinOp,
    Call,
    FuncDef,
    Num,
    Program,
    iter_child_stmts,
    make_num_expr,
    map_child_exprs,
)
from .substitute import CONSTRUCTOR_NAMES


def sigfig_bounds(text: str) -> tuple[str, str]:
    """Exact decimal texts of the half-tick interval around a literal."""
    v = Decimal(text)
    half = Decimal(10) ** v.as_tuple().exponent / 2
    return str(v - half), str(v + half)


def auto_intervalize(
    program: Program,
    constants: set[str] | None = None,
    notes: list[str] | None = None,
) -> Program:
    constants = constants or set()
    notes = notes if notes is not None else []
    program = copy.deepcopy(program)

    def convert(num: Num, where: str) -> Call:
        lo, hi = sigfig_bounds(num.text)
        call = Call("interval", [make_num_expr(lo), make_num_expr(hi)])
        call.origin_literal = num
        notes.append(f"intervalized {num.text} -> interval({lo}, {hi}){where}")
        return call

    def visit(expr, at_root: bool = False):
        if isinstance(expr, Num):
            if expr.is_float_literal and not getattr(expr, "precise", False):
                where = "" if at_root else " (inside an expression; probable formula constant)"
                return convert(expr, where)
            return expr
        if isinstance(expr, Call) and expr.func in CONSTRUCTOR_NAMES:
            return expr  # already an uncertainty constructor
        if isinstance(expr, BinOp) and expr.op == "**":
            expr.left = visit(expr.left)
            return expr  # exponent stays literal
        map_child_exprs(expr, visit)
        return expr

    def visit_stmts(stmts, scope: str):
        for stmt in stmts:
            if isinstance(stmt, Assign):
                scoped = f"{scope}.{stmt.name}" if scope else stmt.name
                if scoped in constants:
                    continue
                stmt.value = visit(stmt.value, at_root=True)
            elif isinstance(stmt, FuncDef):
                inner = f"{scope}.{stmt.name}" if scope else stmt.name
                visit_stmts(stmt.body, inner)
            else:
                map_child_exprs(stmt, visit)
                visit_stmts(list(iter_child_stmts(stmt)), scope)

    visit_stmts(program.body, "")
    return program
