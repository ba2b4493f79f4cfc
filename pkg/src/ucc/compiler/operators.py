"""Operator rewriting: infix arithmetic that can touch an uncertain value
becomes an explicit UQ call carrying a dependence code.

A taint analysis first finds which variables can hold uncertain values
(transitively from the substituted constructors), tracking function
locals, parameters and loop variables to a fixpoint.  Every BinOp or
Compare with a tainted operand is then replaced by add/sub/mul/div/pow
or lt/gt/le/ge/eq/eqq calls.  The dependence argument comes from the
declared matrix when both operands are input variables; a derived
operand pair gets independence only when its uncertain-input sets are
disjoint and every cross pair is declared independent, else the
no-assumption code 'f'.

Comparisons in `if` conditions are wrapped according to the dunno
policy (always / sometimes), or left bare so the runtime raises under
the `error` policy.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from ..dependence import Dependence
from ..minilang.nodes import (
    Assign,
    BinOp,
    Call,
    Compare,
    ExprStmt,
    ForEach,
    ForRange,
    FuncDef,
    If,
    ListLit,
    Name,
    Num,
    Program,
    Return,
    Str,
    Unary,
)
from ..specfile import SpecFile
from .substitute import CONSTRUCTOR_NAMES

OP_FUNCS = {"+": "add", "-": "sub", "*": "mul", "/": "div"}
CMP_FUNCS = {"<": "lt", ">": "gt", "<=": "le", ">=": "ge", "==": "eq", "===": "eqq"}

BUILTIN_FNS = ("exp", "ln", "sqrt", "sin", "cos", "tan", "arctan", "square", "abs")
UQ_CALLS = tuple(OP_FUNCS.values()) + tuple(CMP_FUNCS.values()) + (
    "pow",
    "always",
    "sometimes",
    "fresh",
    "intersect",
)


@dataclass
class TaintInfo:
    """Converged taint facts for one program."""

    uncertain_inputs: set[str] = field(default_factory=set)
    var_taint: dict[str, set] = field(default_factory=dict)
    func_locals: dict[str, set] = field(default_factory=dict)
    func_summary: dict[str, set] = field(default_factory=dict)
    alias_of: dict[str, str] = field(default_factory=dict)

    def resolve_name(self, name: str, scope: str) -> str:
        parts = scope.split(".") if scope else []
        while parts:
            candidate = ".".join(parts)
            if name in self.func_locals.get(candidate, set()):
                return f"{candidate}.{name}"
            parts.pop()
        return name

    def resolve_alias(self, scoped: str) -> str:
        seen = set()
        while scoped in self.alias_of and scoped not in seen:
            seen.add(scoped)
            scoped = self.alias_of[scoped]
        return scoped

    def taint_of(self, name: str, scope: str) -> set:
        return self.var_taint.get(self.resolve_name(name, scope), set())


def _collect_func_locals(program: Program) -> dict[str, set]:
    out: dict[str, set] = {}

    def visit(stmts, scope):
        for stmt in stmts:
            if isinstance(stmt, FuncDef):
                inner = f"{scope}.{stmt.name}" if scope else stmt.name
                out.setdefault(inner, set()).update(stmt.params)
                visit(stmt.body, inner)
            else:
                if isinstance(stmt, Assign) and scope:
                    out.setdefault(scope, set()).add(stmt.name)
                if isinstance(stmt, (ForRange, ForEach)) and scope:
                    out.setdefault(scope, set()).add(stmt.var)
                for sub in _child_blocks(stmt):
                    visit(sub, scope)

    visit(program.body, "")
    return out


def _child_blocks(stmt):
    if isinstance(stmt, If):
        return [stmt.body, stmt.orelse]
    if isinstance(stmt, (ForRange, ForEach)):
        return [stmt.body]
    return []


def _is_constructor(expr) -> bool:
    return isinstance(expr, Call) and expr.func in CONSTRUCTOR_NAMES


def compute_taint(program: Program, spec: SpecFile | None = None) -> TaintInfo:
    info = TaintInfo()
    info.func_locals = _collect_func_locals(program)

    def expr_taint(expr, scope) -> set:
        if isinstance(expr, (Num, Str)):
            return set()
        if isinstance(expr, Name):
            return info.taint_of(expr.id, scope)
        if isinstance(expr, Unary):
            return expr_taint(expr.operand, scope)
        if isinstance(expr, (BinOp, Compare)):
            return expr_taint(expr.left, scope) | expr_taint(expr.right, scope)
        if isinstance(expr, ListLit):
            out = set()
            for e in expr.elts:
                out |= expr_taint(e, scope)
            return out
        if isinstance(expr, Call):
            if expr.func in CONSTRUCTOR_NAMES:
                span = expr.span or (0, 0, 0, 0)
                return {f"~anon@{span[0]}:{span[1]}"}
            args = set()
            for a in expr.args:
                args |= expr_taint(a, scope)
            fname = _resolve_func(expr.func, scope, info)
            if fname is not None:
                args |= info.func_summary.get(fname, set())
            return args
        return set()

    def note_var(scoped: str, taint: set) -> bool:
        old = info.var_taint.get(scoped, set())
        new = old | taint
        if new != old:
            info.var_taint[scoped] = new
            return True
        return False

    def visit(stmts, scope) -> bool:
        changed = False
        for stmt in stmts:
            if isinstance(stmt, Assign):
                scoped = f"{scope}.{stmt.name}" if scope else stmt.name
                rhs = stmt.value
                if _is_constructor(rhs):
                    if scoped not in info.uncertain_inputs:
                        info.uncertain_inputs.add(scoped)
                        changed = True
                    changed |= note_var(scoped, {scoped})
                elif isinstance(rhs, ListLit):
                    taint = set()
                    for idx, elt in enumerate(rhs.elts):
                        if _is_constructor(elt):
                            elt_name = f"{scoped}[{idx}]"
                            if elt_name not in info.uncertain_inputs:
                                info.uncertain_inputs.add(elt_name)
                                changed = True
                            taint.add(elt_name)
                        else:
                            taint |= expr_taint(elt, scope)
                    changed |= note_var(scoped, taint)
                else:
                    if isinstance(rhs, Name):
                        src = info.resolve_name(rhs.id, scope)
                        policy = spec.copy_policy_for(scoped) if spec else "alias"
                        if policy == "alias" and info.alias_of.get(scoped) != src:
                            info.alias_of[scoped] = src
                            changed = True
                    changed |= note_var(scoped, expr_taint(rhs, scope))
            elif isinstance(stmt, FuncDef):
                inner = f"{scope}.{stmt.name}" if scope else stmt.name
                changed |= visit(stmt.body, inner)
            elif isinstance(stmt, If):
                changed |= visit(stmt.body, scope)
                changed |= visit(stmt.orelse, scope)
            elif isinstance(stmt, ForRange):
                changed |= visit(stmt.body, scope)  # control var carries no taint
            elif isinstance(stmt, ForEach):
                scoped = f"{scope}.{stmt.var}" if scope else stmt.var
                changed |= note_var(scoped, expr_taint(stmt.iterable, scope))
                changed |= visit(stmt.body, scope)
            elif isinstance(stmt, Return):
                if scope:
                    old = info.func_summary.get(scope, set())
                    new = old | expr_taint(stmt.value, scope)
                    if new != old:
                        info.func_summary[scope] = new
                        changed = True
            elif isinstance(stmt, ExprStmt):
                expr_taint(stmt.value, scope)  # call-site effects only
            # propagate call arguments into parameter taints
            for call, call_scope in _calls_in_stmt(stmt, scope):
                fname = _resolve_func(call.func, call_scope, info)
                if fname is None:
                    continue
                params = _func_params(program, fname)
                for pname, arg in zip(params, call.args):
                    changed |= note_var(f"{fname}.{pname}", expr_taint(arg, call_scope))
        return changed

    for _ in range(50):
        if not visit(program.body, ""):
            break
    return info


def _calls_in_stmt(stmt, scope):
    from ..minilang.nodes import iter_child_exprs, walk_exprs

    out = []
    for top in iter_child_exprs(stmt):
        for e in walk_exprs(top):
            if isinstance(e, Call):
                out.append((e, scope))
    return out


def _resolve_func(name: str, scope: str, info: TaintInfo) -> str | None:
    if name in CONSTRUCTOR_NAMES or name in BUILTIN_FNS or name in UQ_CALLS or name == "print":
        return None
    parts = scope.split(".") if scope else []
    while parts:
        candidate = ".".join(parts + [name])
        if candidate in info.func_locals:
            return candidate
        parts.pop()
    if name in info.func_locals:
        return name
    return None


def _func_params(program: Program, scoped: str) -> list:
    parts = scoped.split(".")

    def find(stmts, path):
        for stmt in stmts:
            if isinstance(stmt, FuncDef) and stmt.name == path[0]:
                if len(path) == 1:
                    return stmt.params
                return find(stmt.body, path[1:])
            for block in _child_blocks(stmt):
                got = find(block, path)
                if got is not None:
                    return got
        return None

    return find(program.body, parts) or []


# ---------------------------------------------------------------------------
# Rewriting proper.
# ---------------------------------------------------------------------------


def _dep_node(dep: Dependence):
    if dep.kind == "rho":
        return Num(repr(dep.r), dep.r)
    code = {"frechet": "f", "independent": "i", "perfect": "p", "opposite": "o", "equal": "e"}[
        dep.kind
    ]
    return Str(code)


def rewrite_operators(
    program: Program,
    spec: SpecFile | None = None,
    dunno: str = "always",
    notes: list[str] | None = None,
) -> Program:
    notes = notes if notes is not None else []
    program = copy.deepcopy(program)
    info = compute_taint(program, spec)
    matrix = spec.dependence if spec else None

    # Perfect copies extend the matrix: the copy inherits the source's
    # declared dependencies and is comonotone with it.
    eff_pairs: dict[tuple[str, str], Dependence] = {}

    def eff_get(a: str, b: str) -> Dependence:
        a, b = info.resolve_alias(a), info.resolve_alias(b)
        if a == b:
            return Dependence("equal")
        key = (a, b) if a <= b else (b, a)
        if key in eff_pairs:
            return eff_pairs[key]
        if matrix is not None:
            return matrix.get(a, b)
        from ..dependence import FRECHET

        return FRECHET

    if spec is not None:
        for name, policy in spec.copy_policy.items():
            if policy != "perfect":
                continue
            # find the copy source from the alias-style assignment
            src = _copy_source(program, name, info)
            if src is None:
                continue
            key = (name, src) if name <= src else (src, name)
            eff_pairs[key] = Dependence("perfect")
            if matrix is not None:
                for (a, b), dep in matrix.pairs().items():
                    other = b if a == src else (a if b == src else None)
                    if other is not None and other != name:
                        k2 = (name, other) if name <= other else (other, name)
                        eff_pairs.setdefault(k2, dep)

    def dep_for(left, right, tl: set, tr: set, scope: str):
        if not tl or not tr:
            return Str("f")
        if isinstance(left, Name) and isinstance(right, Name) and len(tl) == 1 and len(tr) == 1:
            a = info.resolve_name(left.id, scope)
            b = info.resolve_name(right.id, scope)
            declared = eff_get(a, b).normalized()
            # A declared (or copy-injected) pair between simple carriers
            # wins; undeclared pairs fall through to the derived analysis.
            if declared.kind != "frechet":
                return _dep_node(declared)
        if tl & tr:
            return Str("f")
        for u in tl:
            for v in tr:
                if eff_get(u, v).kind != "independent":
                    return Str("f")
        return Str("i")

    def rewrite_expr(expr, scope):
        if isinstance(expr, (Num, Str, Name)):
            return expr
        if isinstance(expr, Unary):
            expr.operand = rewrite_expr(expr.operand, scope)
            return expr
        if isinstance(expr, Call):
            expr.args = [rewrite_expr(a, scope) for a in expr.args]
            return expr
        if isinstance(expr, ListLit):
            expr.elts = [rewrite_expr(e, scope) for e in expr.elts]
            return expr
        if isinstance(expr, (BinOp, Compare)):
            tl = _expr_taint_for(expr.left, scope, info)
            tr = _expr_taint_for(expr.right, scope, info)
            expr.left = rewrite_expr(expr.left, scope)
            expr.right = rewrite_expr(expr.right, scope)
            if not tl and not tr:
                return expr
            if isinstance(expr, BinOp):
                if expr.op == "**":
                    if tr:
                        notes.append("warning: uncertain exponent in **; not supported")
                    return Call("pow", [expr.left, expr.right], span=expr.span)
                dep = dep_for(expr.left, expr.right, tl, tr, scope)
                return Call(OP_FUNCS[expr.op], [expr.left, expr.right, dep], span=expr.span)
            dep = dep_for(expr.left, expr.right, tl, tr, scope)
            return Call(CMP_FUNCS[expr.op], [expr.left, expr.right, dep], span=expr.span)
        return expr

    def wrap_condition(test, line: int):
        policy = dunno
        if spec is not None and str(line) in spec.dunno_policy:
            policy = spec.dunno_policy[str(line)]
        if policy == "error":
            return test
        return Call(policy, [test])

    def visit(stmts, scope):
        for stmt in stmts:
            if isinstance(stmt, Assign):
                scoped = f"{scope}.{stmt.name}" if scope else stmt.name
                if (
                    isinstance(stmt.value, Name)
                    and spec is not None
                    and spec.copy_policy_for(scoped) in ("perfect", "copy")
                    and info.taint_of(stmt.value.id, scope)
                ):
                    stmt.value = Call("fresh", [stmt.value])
                    notes.append(
                        f"copy policy {spec.copy_policy_for(scoped)!r} at {scoped}: "
                        "bound to a distinct object"
                    )
                else:
                    stmt.value = rewrite_expr(stmt.value, scope)
            elif isinstance(stmt, If):
                tainted = bool(_expr_taint_for(stmt.test, scope, info))
                stmt.test = rewrite_expr(stmt.test, scope)
                if tainted:
                    line = stmt.span[0] if stmt.span else 0
                    stmt.test = wrap_condition(stmt.test, line)
                visit(stmt.body, scope)
                visit(stmt.orelse, scope)
            elif isinstance(stmt, FuncDef):
                visit(stmt.body, f"{scope}.{stmt.name}" if scope else stmt.name)
            elif isinstance(stmt, ForRange):
                if stmt.start is not None:
                    stmt.start = rewrite_expr(stmt.start, scope)
                stmt.stop = rewrite_expr(stmt.stop, scope)
                visit(stmt.body, scope)
            elif isinstance(stmt, ForEach):
                stmt.iterable = rewrite_expr(stmt.iterable, scope)
                visit(stmt.body, scope)
            elif isinstance(stmt, Return):
                stmt.value = rewrite_expr(stmt.value, scope)
            elif isinstance(stmt, ExprStmt):
                stmt.value = rewrite_expr(stmt.value, scope)

    visit(program.body, "")
    return program


def _expr_taint_for(expr, scope, info: TaintInfo) -> set:
    from ..minilang.nodes import walk_exprs

    out = set()
    for e in walk_exprs(expr):
        if isinstance(e, Name):
            out |= info.taint_of(e.id, scope)
        elif isinstance(e, Call):
            if e.func in CONSTRUCTOR_NAMES:
                span = e.span or (0, 0, 0, 0)
                out.add(f"~anon@{span[0]}:{span[1]}")
            else:
                fname = _resolve_func(e.func, scope, info)
                if fname is not None:
                    out |= info.func_summary.get(fname, set())
    return out


def _copy_source(program: Program, target: str, info: TaintInfo) -> str | None:
    """Scoped source name of the `target = source` copy assignment."""
    parts = target.split(".")
    bare = parts[-1]
    scope = ".".join(parts[:-1])

    def visit(stmts, cur):
        for stmt in stmts:
            if isinstance(stmt, FuncDef):
                got = visit(stmt.body, f"{cur}.{stmt.name}" if cur else stmt.name)
                if got:
                    return got
                continue
            if isinstance(stmt, Assign) and cur == scope and stmt.name == bare:
                if isinstance(stmt.value, Name):
                    return info.resolve_name(stmt.value.id, cur)
            for block in _child_blocks(stmt):
                got = visit(block, cur)
                if got:
                    return got
        return None

    return visit(program.body, "")
