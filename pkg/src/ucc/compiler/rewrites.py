"""Directory of multi-use to single-use rearrangements.

Each rule pairs an AST pattern with an algebraically equivalent
replacement in which the repeated uncertain variable appears once.
Rules fire only when their guards hold; a partially satisfied guard
(the kinematics rule with an acceleration of unknown sign) emits both
forms joined by intersect() so the runtime keeps the tighter enclosure.
Cross-line repetitions are caught by matching against the inlined form
of an assignment and rewriting to it when a rule fires there.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

from ..minilang.nodes import (
    Assign,
    BinOp,
    Call,
    Compare,
    ListLit,
    Name,
    Num,
    Program,
    Unary,
)
from .operators import TaintInfo, _expr_taint_for, compute_taint
from .repeats import build_inline_map, inline_expr


@dataclass
class MVar:
    """Pattern metavariable; `uncertain` constrains the matched expr."""

    name: str
    uncertain: bool | None = None


_COMMUTATIVE = ("+", "*")


def _match(pat, node, binding: dict, ctx) -> list[dict]:
    if isinstance(pat, MVar):
        if pat.uncertain is True and not ctx.is_uncertain(node):
            return []
        if pat.uncertain is False and ctx.is_uncertain(node):
            return []
        bound = binding.get(pat.name)
        if bound is not None:
            return [binding] if bound == node else []
        new = dict(binding)
        new[pat.name] = node
        return [new]
    if isinstance(pat, Num):
        return [binding] if isinstance(node, Num) and node.value == pat.value else []
    if isinstance(pat, Name):
        return [binding] if isinstance(node, Name) and node.id == pat.id else []
    if isinstance(pat, Unary):
        if isinstance(node, Unary) and node.op == pat.op:
            return _match(pat.operand, node.operand, binding, ctx)
        return []
    if isinstance(pat, BinOp):
        if not isinstance(node, BinOp) or node.op != pat.op:
            return []
        out = []
        orders = [(node.left, node.right)]
        if pat.op in _COMMUTATIVE:
            orders.append((node.right, node.left))
        for l, r in orders:
            for b1 in _match(pat.left, l, binding, ctx):
                out.extend(_match(pat.right, r, b1, ctx))
        return out
    if isinstance(pat, Call):
        if not isinstance(node, Call) or node.func != pat.func or len(node.args) != len(pat.args):
            return []
        bindings = [binding]
        for pa, na in zip(pat.args, node.args):
            bindings = [b2 for b in bindings for b2 in _match(pa, na, b, ctx)]
        return bindings
    return []


def _build(template, binding: dict):
    if isinstance(template, MVar):
        return copy.deepcopy(binding[template.name])
    if isinstance(template, BinOp):
        return BinOp(template.op, _build(template.left, binding), _build(template.right, binding))
    if isinstance(template, Unary):
        return Unary(template.op, _build(template.operand, binding))
    if isinstance(template, Call):
        return Call(template.func, [_build(a, binding) for a in template.args])
    return copy.deepcopy(template)


class _Ctx:
    def __init__(self, info: TaintInfo, scope: str, literal_values: dict | None = None):
        self.info = info
        self.scope = scope
        self.literal_values = literal_values or {}

    def is_uncertain(self, expr) -> bool:
        return bool(_expr_taint_for(expr, self.scope, self.info))

    def known_value(self, expr) -> float | None:
        """Numeric value of a literal or a single-assignment literal name."""
        if isinstance(expr, Num):
            return float(expr.value)
        if isinstance(expr, Unary) and isinstance(expr.operand, Num):
            return -float(expr.operand.value)
        if isinstance(expr, Name) and not self.scope:
            return self.literal_values.get(expr.id)
        return None


# --- simple pattern rules ---

_X = MVar("x", uncertain=True)
_Y = MVar("y")
_Z = MVar("z")

_SIMPLE_RULES = (
    (
        "tan-of-arctan-sum",
        BinOp("/", BinOp("+", _X, _Y), BinOp("-", Num("1", 1), BinOp("*", _X, _Y))),
        Call("tan", [BinOp("+", Call("arctan", [_X]), Call("arctan", [_Y]))]),
    ),
    (
        "shared-sum",
        BinOp("+", _X, _X),
        BinOp("*", Num("2", 2), _X),
    ),
    (
        "self-product",
        BinOp("*", _X, _X),
        Call("square", [_X]),
    ),
    (
        "common-factor",
        BinOp("+", BinOp("*", _X, _Y), BinOp("*", _X, _Z)),
        BinOp("*", _X, BinOp("+", _Y, _Z)),
    ),
)


def _flatten_product(expr) -> list | None:
    if isinstance(expr, BinOp) and expr.op == "*":
        left = _flatten_product(expr.left)
        right = _flatten_product(expr.right)
        if left is None or right is None:
            return None
        return left + right
    return [expr]


def _try_kinematics(expr, ctx: _Ctx):
    """u*t + 0.5*a*t**2  ->  square(sqrt(a/2)*t + u/sqrt(2*a)) - u**2/(2*a).

    Guard: t uncertain, u and a certain, a > 0.  When a's sign is not
    statically known the naive and rewritten forms are intersected.
    """
    if not (isinstance(expr, BinOp) and expr.op == "+"):
        return None, False
    for first, second in ((expr.left, expr.right), (expr.right, expr.left)):
        f1 = _flatten_product(first)
        f2 = _flatten_product(second)
        if not f1 or not f2 or len(f1) != 2 or len(f2) != 3:
            continue
        half = [f for f in f2 if isinstance(f, Num) and f.value == 0.5]
        squares = [f for f in f2 if isinstance(f, BinOp) and f.op == "**"
                   and isinstance(f.right, Num) and f.right.value == 2]
        if len(half) != 1 or len(squares) != 1:
            continue
        t_node = squares[0].left
        rest = [f for f in f2 if f is not half[0] and f is not squares[0]]
        if len(rest) != 1:
            continue
        a_node = rest[0]
        u_candidates = [f for f in f1 if f == t_node]
        if len(u_candidates) != 1:
            continue
        u_node = f1[0] if f1[1] == t_node else f1[1]
        if not ctx.is_uncertain(t_node):
            continue
        if ctx.is_uncertain(u_node) or ctx.is_uncertain(a_node):
            continue
        rewritten = BinOp(
            "-",
            Call(
                "square",
                [
                    BinOp(
                        "+",
                        BinOp("*", Call("sqrt", [BinOp("/", copy.deepcopy(a_node), Num("2", 2))]), copy.deepcopy(t_node)),
                        BinOp("/", copy.deepcopy(u_node), Call("sqrt", [BinOp("*", Num("2", 2), copy.deepcopy(a_node))])),
                    )
                ],
            ),
            BinOp("/", BinOp("**", copy.deepcopy(u_node), Num("2", 2)), BinOp("*", Num("2", 2), copy.deepcopy(a_node))),
        )
        a_value = ctx.known_value(a_node)
        if a_value is not None and a_value > 0:
            return rewritten, False
        if a_value is not None:
            continue  # statically nonpositive: rewrite invalid
        # sign unknown at compile time: keep both enclosures
        return Call("intersect", [copy.deepcopy(expr), rewritten]), True
    return None, False


def _rewrite_node(expr, ctx: _Ctx, notes: list[str], line: int) -> tuple[object, bool]:
    if getattr(expr, "rw_done", False):
        return expr, False
    fired = False
    # children first
    if isinstance(expr, (BinOp, Compare)):
        expr.left, f1 = _rewrite_node(expr.left, ctx, notes, line)
        expr.right, f2 = _rewrite_node(expr.right, ctx, notes, line)
        fired = f1 or f2
    elif isinstance(expr, Unary):
        expr.operand, fired = _rewrite_node(expr.operand, ctx, notes, line)
    elif isinstance(expr, Call):
        new_args = []
        for a in expr.args:
            na, f = _rewrite_node(a, ctx, notes, line)
            new_args.append(na)
            fired = fired or f
        expr.args = new_args
    elif isinstance(expr, ListLit):
        new_elts = []
        for e in expr.elts:
            ne, f = _rewrite_node(e, ctx, notes, line)
            new_elts.append(ne)
            fired = fired or f
        expr.elts = new_elts

    rewritten, partial = _try_kinematics(expr, ctx)
    if rewritten is not None:
        how = "both forms intersected (sign of the acceleration unknown)" if partial else "applied"
        notes.append(f"line {line}: single-use kinematics rearrangement {how}")
        _mark_done(rewritten)
        return rewritten, True
    for name, pattern, template in _SIMPLE_RULES:
        bindings = _match(pattern, expr, {}, ctx)
        if bindings:
            notes.append(f"line {line}: rewrite {name}")
            out = _build(template, bindings[0])
            out.rw_done = True
            return out, True
    return expr, fired


def _mark_done(expr) -> None:
    expr.rw_done = True
    from ..minilang.nodes import iter_child_exprs

    for child in iter_child_exprs(expr):
        _mark_done(child)


def rewrite_expression(expr, ctx: _Ctx, notes: list[str], line: int):
    """Apply the directory to one expression until a fixpoint."""
    expr = copy.deepcopy(expr)
    changed_any = False
    for _ in range(10):
        expr, fired = _rewrite_node(expr, ctx, notes, line)
        if not fired:
            break
        changed_any = True
    return expr, changed_any


def _literal_values(program: Program) -> dict[str, float]:
    """Values of top-level names assigned a literal exactly once."""
    from collections import Counter

    from ..minilang.nodes import walk_stmts

    counts = Counter()
    for stmt in walk_stmts(program):
        if isinstance(stmt, Assign):
            counts[stmt.name] += 1
    out = {}
    for stmt in program.body:
        if isinstance(stmt, Assign) and counts[stmt.name] == 1:
            if isinstance(stmt.value, Num):
                out[stmt.name] = float(stmt.value.value)
            elif isinstance(stmt.value, Unary) and isinstance(stmt.value.operand, Num):
                out[stmt.name] = -float(stmt.value.operand.value)
    return out


def apply_rewrite_directory(
    program: Program,
    spec=None,
    notes: list[str] | None = None,
) -> Program:
    notes = notes if notes is not None else []
    program = copy.deepcopy(program)
    info = compute_taint(program, spec)
    inline_map = build_inline_map(program)
    literal_values = _literal_values(program)

    def visit(stmts, scope):
        ctx = _Ctx(info, scope, literal_values)
        for stmt in stmts:
            line = stmt.span[0] if stmt.span else 0
            if isinstance(stmt, Assign):
                new, fired = rewrite_expression(stmt.value, ctx, notes, line)
                if fired:
                    stmt.value = new
                elif not scope:
                    inlined = inline_expr(stmt.value, inline_map)
                    if inlined != stmt.value:
                        scratch: list[str] = []
                        new, fired = rewrite_expression(inlined, ctx, scratch, line)
                        if fired:
                            notes.extend(scratch)
                            notes.append(
                                f"line {line}: cross-line repetition inlined and rewritten"
                            )
                            stmt.value = new
            from ..minilang.nodes import FuncDef, iter_child_stmts

            if isinstance(stmt, FuncDef):
                visit(stmt.body, f"{scope}.{stmt.name}" if scope else stmt.name)
            else:
                visit(list(iter_child_stmts(stmt)), scope)

    visit(program.body, "")
    return program
