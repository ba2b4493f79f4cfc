"""Repeated-variable detection.

An uncertain variable entering one expression twice inflates the result
(its uncertainty is counted twice); this pass reports such repetitions,
including ones hidden across lines, by inlining chains of pure
single-assignment variables before counting.  Loops, reassigned names
and anything built from an uncertainty constructor are never inlined.
"""

from __future__ import annotations

import copy
from collections import Counter
from dataclasses import dataclass, field

from ..minilang.nodes import (
    Assign,
    BinOp,
    Call,
    Compare,
    ListLit,
    Name,
    Num,
    Program,
    Str,
    Unary,
    walk_exprs,
)
from .operators import BUILTIN_FNS, TaintInfo, compute_taint
from .substitute import CONSTRUCTOR_NAMES


@dataclass(frozen=True)
class Repeat:
    line: int
    target: str  # variable being assigned (or "<expr>" for bare expressions)
    name: str  # the repeated uncertain variable
    count: int
    cross_line: bool  # repetition only visible after inlining


@dataclass
class RepeatReport:
    repeats: list[Repeat] = field(default_factory=list)
    inlined: dict[int, object] = field(default_factory=dict)  # line -> inlined rhs

    @property
    def ok(self) -> bool:
        return not self.repeats

    def __str__(self):
        if not self.repeats:
            return "no repeated uncertain variables detected"
        lines = ["repeated uncertain variables:"]
        for r in self.repeats:
            origin = " (hidden across lines)" if r.cross_line else ""
            lines.append(f"  line {r.line}, {r.target}: {r.name} appears x{r.count}{origin}")
        return "\n".join(lines)


def _inlinable(expr, assign_counts: Counter, inlinable_names: set) -> bool:
    """Pure arithmetic over literals, inlinable names and builtin math."""
    for e in walk_exprs(expr):
        if isinstance(e, (BinOp, Compare, Unary, Num, ListLit, Str)):
            continue
        if isinstance(e, Name):
            continue
        if isinstance(e, Call):
            if e.func in BUILTIN_FNS:
                continue
            return False
        return False
    return True


def build_inline_map(program: Program) -> dict[str, object]:
    """rhs expressions of pure, single-assignment, top-level variables.

    Literal assignments are inputs (potential uncertainty carriers), not
    formulas, so they are never inlined away.
    """
    from ..minilang.nodes import walk_stmts

    counts = Counter()
    rhs: dict[str, object] = {}
    top_ids = {id(s) for s in program.body}
    for stmt in program.body:  # top level only; loops and branches excluded
        if isinstance(stmt, Assign):
            counts[stmt.name] += 1
            rhs[stmt.name] = stmt.value
    # any assignment in nested blocks disqualifies the name
    for stmt in walk_stmts(program):
        if isinstance(stmt, Assign) and id(stmt) not in top_ids:
            counts[stmt.name] += 1

    out = {}
    for name, expr in rhs.items():
        if counts[name] != 1:
            continue
        if isinstance(expr, Num) or (isinstance(expr, Unary) and isinstance(expr.operand, Num)):
            continue  # literal input
        if any(isinstance(e, Call) and e.func in CONSTRUCTOR_NAMES for e in walk_exprs(expr)):
            continue  # uncertain objects are inputs, not formulas
        if _inlinable(expr, counts, set()):
            out[name] = expr
    return out


def inline_expr(expr, inline_map: dict[str, object], _depth: int = 0):
    """Substitute inlinable names recursively; returns a fresh tree."""
    if _depth > 50:
        return copy.deepcopy(expr)
    if isinstance(expr, Name) and expr.id in inline_map:
        return inline_expr(inline_map[expr.id], inline_map, _depth + 1)
    expr = copy.copy(expr)
    if isinstance(expr, (BinOp, Compare)):
        expr.left = inline_expr(expr.left, inline_map, _depth)
        expr.right = inline_expr(expr.right, inline_map, _depth)
    elif isinstance(expr, Unary):
        expr.operand = inline_expr(expr.operand, inline_map, _depth)
    elif isinstance(expr, Call):
        expr.args = [inline_expr(a, inline_map, _depth) for a in expr.args]
    elif isinstance(expr, ListLit):
        expr.elts = [inline_expr(e, inline_map, _depth) for e in expr.elts]
    return expr


def _count_uncertain_names(expr, uncertain: set, scope: str, info: TaintInfo) -> Counter:
    counts = Counter()
    for e in walk_exprs(expr):
        if isinstance(e, Name):
            resolved = info.resolve_alias(info.resolve_name(e.id, scope))
            if resolved in uncertain or info.var_taint.get(resolved):
                counts[resolved] += 1
    return counts


def detect_repeats(program: Program, spec=None, info: TaintInfo | None = None) -> RepeatReport:
    info = info or compute_taint(program, spec)
    uncertain = set(info.uncertain_inputs)
    if not uncertain:
        # No declared uncertainty: report repetition of any variable,
        # assigned or free (but not the builtin constants).
        uncertain = {s.name for s in _all_var_names(program)}
        for stmt in [program] + list(_stmts(program)):
            for e in walk_exprs(stmt):
                if isinstance(e, Name) and e.id not in ("pi", "e", "inf"):
                    uncertain.add(e.id)
    inline_map = build_inline_map(program)
    report = RepeatReport()

    def scan(stmts, scope):
        for stmt in stmts:
            target = None
            exprs = []
            if isinstance(stmt, Assign):
                target = stmt.name
                exprs = [stmt.value]
            elif hasattr(stmt, "test"):
                target = "<cond>"
                exprs = [stmt.test]
            elif hasattr(stmt, "value"):
                target = "<expr>"
                exprs = [stmt.value]
            line = stmt.span[0] if stmt.span else 0
            for expr in exprs:
                direct = _count_uncertain_names(expr, uncertain, scope, info)
                inlined = _count_uncertain_names(
                    inline_expr(expr, inline_map), uncertain, scope, info
                )
                if target is not None:
                    report.inlined[line] = inline_expr(expr, inline_map)
                for name, count in sorted(inlined.items()):
                    if count >= 2:
                        report.repeats.append(
                            Repeat(
                                line=line,
                                target=target,
                                name=name,
                                count=count,
                                cross_line=direct.get(name, 0) < count,
                            )
                        )
            from ..minilang.nodes import iter_child_stmts, FuncDef

            if isinstance(stmt, FuncDef):
                scan(stmt.body, f"{scope}.{stmt.name}" if scope else stmt.name)
            else:
                scan(list(iter_child_stmts(stmt)), scope)

    scan(program.body, "")
    return report


def _all_var_names(program: Program):
    from ..minilang.analysis import find_assignments

    return find_assignments(program)


def _stmts(program: Program):
    from ..minilang.nodes import walk_stmts

    return walk_stmts(program)
