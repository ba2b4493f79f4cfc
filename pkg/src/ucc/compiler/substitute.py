"""Substitution pass: swap declared uncertainties into literal assignments.

Each spec entry names an assignment site (possibly dotted or indexed);
the literal there becomes a constructor call.  The replaced literal is
kept on the new node as `origin_literal` so a compiled program can be
collapsed back to its deterministic form for soundness checks.
"""

from __future__ import annotations

import copy

from ..errors import UnknownVariable
from ..minilang.analysis import find_assignments
from ..minilang.nodes import Program, Str, map_child_exprs, walk_stmts
from ..minilang.parser import parse_expression
from ..specfile import SpecFile

CONSTRUCTOR_NAMES = ("interval", "normal", "uniform", "beta", "binomial", "kn")


def substitute_assignments(program: Program, spec: SpecFile, notes: list[str] | None = None) -> Program:
    """Returns a rewritten copy; the input tree is left untouched."""
    notes = notes if notes is not None else []
    program = copy.deepcopy(program)
    sites = find_assignments(program)
    by_name: dict[str, list] = {}
    for site in sites:
        by_name.setdefault(site.name, []).append(site)

    for name, entry in spec.entries.items():
        if name in spec.constants:
            continue
        candidates = by_name.get(name)
        if not candidates:
            raise UnknownVariable(f"spec names {name!r} but the source never assigns it")
        literal_hits = [s for s in candidates if s.rhs_kind == "literal"]
        if not literal_hits:
            kinds = ", ".join(s.rhs_kind for s in candidates)
            notes.append(
                f"warning: {name} is assigned from {kinds}, not a literal; "
                "no substitution performed"
            )
            continue
        replacement_src = entry.expr.to_source()
        for site in literal_hits:
            node = parse_expression(replacement_src)
            if entry.expr.kind == "scalar":
                node.precise = True  # a precise override must survive auto mode
            if entry.ensemble is not None and hasattr(node, "args"):
                node.args.append(Str(entry.ensemble))
            if site.index is None:
                node.origin_literal = site.node.value
                site.node.value = node
            else:
                node.origin_literal = site.node.value.elts[site.index]
                site.node.value.elts[site.index] = node
            notes.append(f"substituted {name} at line {site.line}: {replacement_src}")
    return program


def collapse_uncertain(program: Program) -> Program:
    """Restore every substituted/intervalized literal; leaves the rest as-is.

    The result evaluates deterministically, which is the baseline for the
    scalar-soundness check.
    """
    program = copy.deepcopy(program)

    def restore(expr):
        origin = getattr(expr, "origin_literal", None)
        if origin is not None:
            return copy.deepcopy(origin)
        map_child_exprs(expr, restore)
        return expr

    for stmt in walk_stmts(program):
        map_child_exprs(stmt, restore)
    return program
