"""Assignment discovery: which statements define variables, and how.

Only assignments whose right-hand side is a bare numeric literal are
candidates for uncertainty substitution; copies (`c = a`), calls and
mathematical expressions are classified but left alone.  Function-local
variables are reported under dotted names (`calculateVelocity.g`), and
numeric elements of list literals under indexed names (`xs[1]`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .nodes import (
    Assign,
    Call,
    FuncDef,
    ListLit,
    Name,
    Num,
    Program,
    Unary,
    iter_child_stmts,
)


@dataclass(frozen=True)
class AssignmentSite:
    name: str  # scoped name, e.g. "a" or "calculateVelocity.g" or "xs[1]"
    site_id: int
    rhs_kind: str  # literal | copy | call | expression
    scope: str  # "" for globals, else dotted function path
    line: int = field(default=0, compare=False)
    node: Assign | None = field(default=None, compare=False, repr=False)
    index: int | None = field(default=None, compare=False)  # list element index


def _is_literal(expr) -> bool:
    return isinstance(expr, Num) or (isinstance(expr, Unary) and isinstance(expr.operand, Num))


def classify_rhs(expr) -> str:
    if _is_literal(expr):
        return "literal"
    if isinstance(expr, Name):
        return "copy"
    if isinstance(expr, Call):
        return "call"
    return "expression"


def find_assignments(program: Program) -> list[AssignmentSite]:
    sites: list[AssignmentSite] = []
    counter = [0]

    def visit(stmts, scope: str):
        for stmt in stmts:
            if isinstance(stmt, Assign):
                scoped = f"{scope}.{stmt.name}" if scope else stmt.name
                line = stmt.span[0] if stmt.span else 0
                kind = classify_rhs(stmt.value)
                sites.append(
                    AssignmentSite(scoped, counter[0], kind, scope, line=line, node=stmt)
                )
                counter[0] += 1
                if isinstance(stmt.value, ListLit):
                    for idx, elt in enumerate(stmt.value.elts):
                        if _is_literal(elt):
                            sites.append(
                                AssignmentSite(
                                    f"{scoped}[{idx}]",
                                    counter[0],
                                    "literal",
                                    scope,
                                    line=line,
                                    node=stmt,
                                    index=idx,
                                )
                            )
                            counter[0] += 1
            if isinstance(stmt, FuncDef):
                inner = f"{scope}.{stmt.name}" if scope else stmt.name
                visit(stmt.body, inner)
            else:
                visit(list(iter_child_stmts(stmt)), scope)

    visit(program.body, "")
    return sites


def literal_sites(program: Program) -> dict[str, list[AssignmentSite]]:
    """Substitution candidates grouped by scoped name."""
    out: dict[str, list[AssignmentSite]] = {}
    for site in find_assignments(program):
        if site.rhs_kind == "literal":
            out.setdefault(site.name, []).append(site)
    return out
