"""Tree-walking evaluator for (enriched or plain) MiniScript.

Functions see their own locals plus the globals; values are immutable,
so aliasing a variable really shares the object, which is what gives
`alias` copies their exact same-quantity arithmetic.  A DUNNO result
reaching a bare `if` raises DunnoBranch: under the `error` policy the
compiler leaves conditions unwrapped on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..distributions import DistSpec, kn_cbox, make_pbox
from ..errors import DunnoBranch, UccRuntimeError
from ..interval import Interval
from ..logic import Logical, always, sometimes
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
from ..pbox import DEFAULT_STEPS, PBox
from . import ops

_MATH_NAMES = ("exp", "ln", "sqrt", "sin", "cos", "tan", "arctan", "square", "abs")
_BINOP_CALLS = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
_CMP_CALLS = {"lt": "<", "gt": ">", "le": "<=", "ge": ">=", "eq": "==", "eqq": "==="}


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


@dataclass
class ExecResult:
    env: dict
    printed: list[str] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(format_value(e) for e in v) + "]"
    return repr(v)


class Evaluator:
    def __init__(self, steps: int = DEFAULT_STEPS, echo: bool = False):
        self.steps = steps
        self.echo = echo
        self.globals: dict = {}
        self.functions: dict[str, FuncDef] = {}
        self.printed: list[str] = []
        self.diagnostics: list[str] = []
        self.consts = {"pi": math.pi, "e": math.e, "inf": math.inf}

    # --- entry points ---

    def run(self, program: Program) -> ExecResult:
        self.exec_block(program.body, self.globals)
        return ExecResult(env=dict(self.globals), printed=self.printed, diagnostics=self.diagnostics)

    def exec_block(self, stmts, env: dict) -> None:
        for stmt in stmts:
            self.exec_stmt(stmt, env)

    # --- statements ---

    def exec_stmt(self, stmt, env: dict) -> None:
        if isinstance(stmt, Assign):
            env[stmt.name] = self.eval(stmt.value, env)
        elif isinstance(stmt, ExprStmt):
            self.eval(stmt.value, env)
        elif isinstance(stmt, If):
            state = ops.truthiness(self.eval(stmt.test, env))
            if state == "dunno":
                line = stmt.span[0] if stmt.span else "?"
                raise DunnoBranch(
                    f"condition at line {line} is DUNNO; choose an always/sometimes policy"
                )
            self.exec_block(stmt.body if state == "true" else stmt.orelse, env)
        elif isinstance(stmt, ForRange):
            start = 0 if stmt.start is None else self._int(self.eval(stmt.start, env), "range start")
            stop = self._int(self.eval(stmt.stop, env), "range stop")
            for i in range(start, stop):
                env[stmt.var] = i
                self.exec_block(stmt.body, env)
        elif isinstance(stmt, ForEach):
            seq = self.eval(stmt.iterable, env)
            if not isinstance(seq, list):
                raise UccRuntimeError(f"cannot iterate over {seq!r}")
            for item in seq:
                env[stmt.var] = item
                self.exec_block(stmt.body, env)
        elif isinstance(stmt, FuncDef):
            self.functions[stmt.name] = stmt
        elif isinstance(stmt, Return):
            raise _ReturnSignal(self.eval(stmt.value, env))
        else:
            raise UccRuntimeError(f"cannot execute {stmt!r}")

    @staticmethod
    def _int(v, what: str) -> int:
        if isinstance(v, (int, float)) and float(v).is_integer():
            return int(v)
        raise UccRuntimeError(f"{what} must be an integer, got {v!r}")

    # --- expressions ---

    def eval(self, expr, env: dict):
        if isinstance(expr, Num):
            return expr.value
        if isinstance(expr, Str):
            return expr.value
        if isinstance(expr, Name):
            if expr.id in env:
                return env[expr.id]
            if env is not self.globals and expr.id in self.globals:
                return self.globals[expr.id]
            if expr.id in self.consts:
                return self.consts[expr.id]
            raise UccRuntimeError(f"name {expr.id!r} is not defined")
        if isinstance(expr, Unary):
            return ops.negate(self.eval(expr.operand, env))
        if isinstance(expr, BinOp):
            l = self.eval(expr.left, env)
            if expr.op == "**":
                return ops.power(l, self.eval(expr.right, env))
            r = self.eval(expr.right, env)
            return ops.binop(expr.op, l, r, dep="f", steps=self.steps)
        if isinstance(expr, Compare):
            l = self.eval(expr.left, env)
            r = self.eval(expr.right, env)
            return ops.compare(expr.op, l, r, steps=self.steps)
        if isinstance(expr, ListLit):
            return [self.eval(e, env) for e in expr.elts]
        if isinstance(expr, Call):
            return self.call(expr, env)
        raise UccRuntimeError(f"cannot evaluate {expr!r}")

    def call(self, expr: Call, env: dict):
        name = expr.func
        if name in _BINOP_CALLS or name in _CMP_CALLS:
            if not 2 <= len(expr.args) <= 3:
                raise UccRuntimeError(f"{name}() takes 2 or 3 arguments")
            l = self.eval(expr.args[0], env)
            r = self.eval(expr.args[1], env)
            dep = self.eval(expr.args[2], env) if len(expr.args) == 3 else "f"
            if name in _BINOP_CALLS:
                return ops.binop(_BINOP_CALLS[name], l, r, dep=dep, steps=self.steps)
            return ops.compare(_CMP_CALLS[name], l, r, dep=dep, steps=self.steps)
        if name == "pow":
            base = self.eval(expr.args[0], env)
            exponent = self.eval(expr.args[1], env)
            return ops.power(base, exponent)
        if name in _MATH_NAMES:
            (arg,) = [self.eval(a, env) for a in expr.args]
            return ops.apply_unary(name, arg, diagnostics=self.diagnostics)
        if name == "always":
            v = self.eval(expr.args[0], env)
            return always(v) if isinstance(v, Logical) else bool(v)
        if name == "sometimes":
            v = self.eval(expr.args[0], env)
            return sometimes(v) if isinstance(v, Logical) else bool(v)
        if name == "intersect":
            l = self.eval(expr.args[0], env)
            r = self.eval(expr.args[1], env)
            return ops.intersect_values(l, r)
        if name == "fresh":
            return ops.fresh(self.eval(expr.args[0], env))
        if name == "print":
            vals = [self.eval(a, env) for a in expr.args]
            text = " ".join(format_value(v) for v in vals)
            self.printed.append(text)
            if self.echo:
                print(text)
            return None
        if name in ("interval", "normal", "uniform", "beta", "binomial", "kn"):
            return self.construct(name, expr, env)
        if name in self.functions:
            return self.call_user(self.functions[name], expr, env)
        raise UccRuntimeError(f"unknown function {name!r}")

    def call_user(self, fn: FuncDef, expr: Call, env: dict):
        if len(expr.args) != len(fn.params):
            raise UccRuntimeError(
                f"{fn.name}() takes {len(fn.params)} arguments, got {len(expr.args)}"
            )
        local = {p: self.eval(a, env) for p, a in zip(fn.params, expr.args)}
        try:
            self.exec_block(fn.body, local)
        except _ReturnSignal as sig:
            return sig.value
        return None

    # --- uncertain-object constructors ---

    def construct(self, name: str, expr: Call, env: dict):
        args = [self.eval(a, env) for a in expr.args]
        ensemble = None
        if args and isinstance(args[-1], str):
            ensemble = args.pop()
        if name == "interval":
            if len(args) != 2:
                raise UccRuntimeError("interval() takes two bounds")
            return Interval(self._num(args[0]), self._num(args[1]))
        if name == "kn":
            if len(args) != 2:
                raise UccRuntimeError("kn() takes k and n")
            box = kn_cbox(self._int(args[0], "k"), self._int(args[1], "n"), steps=self.steps)
            return self._with_ensemble(box, ensemble)
        params = []
        for a in args:
            if isinstance(a, list):
                if len(a) != 2:
                    raise UccRuntimeError(f"{name}() interval parameter needs two bounds")
                params.append(Interval(self._num(a[0]), self._num(a[1])))
            elif isinstance(a, Interval):
                params.append(a)
            else:
                params.append(Interval.point(self._num(a)))
        box = make_pbox(DistSpec(name, tuple(params)), n=self.steps)
        return self._with_ensemble(box, ensemble)

    @staticmethod
    def _with_ensemble(box: PBox, ensemble: str | None) -> PBox:
        if ensemble is None:
            return box
        return PBox(box.left, box.right, kind=box.kind, ensemble=ensemble)

    @staticmethod
    def _num(v) -> float:
        if isinstance(v, (int, float)):
            return float(v)
        raise UccRuntimeError(f"expected a number, got {v!r}")


def eval_program(program: Program, steps: int = DEFAULT_STEPS, echo: bool = False) -> ExecResult:
    return Evaluator(steps=steps, echo=echo).run(program)
