"""Monte Carlo harness: wrap the original program in a sampling loop.

The harness does what analysts usually do to a crystal box they treat as
a black box: draw inputs, run the deterministic program, tally.  That is
exactly the practice whose silent assumptions the intrusive runtime is
meant to expose, so sampling an interval (which carries no distribution)
or a p-box emits a loud warning about the uniformity assumption being
injected.

Determinism: a counter-based generator (Philox) keyed by the seed, with
all columns drawn in sorted variable order, makes runs reproducible and
mergeable in trial order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import MissingSampler, UccRuntimeError, UccWarning
from ..interval import Interval
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
from ..minilang.parser import parse_expression
from ..pbox import PBox, levels
from ..special import norm_ppf_array
from ..specfile import SpecFile

_PY_FNS = {
    "exp": "math.exp",
    "ln": "math.log",
    "sqrt": "math.sqrt",
    "sin": "math.sin",
    "cos": "math.cos",
    "tan": "math.tan",
    "arctan": "math.atan",
    "abs": "abs",
    "square": "_square",
    "print": "_noop",
    "range": "range",
}

_FORBIDDEN = {"add", "sub", "mul", "div", "pow", "lt", "gt", "le", "ge", "eq", "eqq",
              "interval", "normal", "uniform", "beta", "binomial", "kn", "always",
              "sometimes", "fresh", "intersect"}


def _magic(name: str) -> str:
    return "__u_" + name.replace(".", "_").replace("[", "_").replace("]", "")


def emit_python(program: Program, sampled: set[str]) -> str:
    """Python source for the deterministic program, with each sampled
    assignment site reading its per-trial value from an injected global."""

    def expr(e) -> str:
        if isinstance(e, Num):
            return e.text
        if isinstance(e, Str):
            return repr(e.value)
        if isinstance(e, Name):
            if e.id == "pi":
                return "math.pi"
            if e.id == "e":
                return "math.e"
            if e.id == "inf":
                return "math.inf"
            return e.id
        if isinstance(e, Unary):
            return f"(-{expr(e.operand)})"
        if isinstance(e, BinOp):
            return f"({expr(e.left)} {e.op} {expr(e.right)})"
        if isinstance(e, Compare):
            op = "==" if e.op == "===" else e.op
            return f"({expr(e.left)} {op} {expr(e.right)})"
        if isinstance(e, ListLit):
            return "[" + ", ".join(expr(x) for x in e.elts) + "]"
        if isinstance(e, Call):
            if e.func in _FORBIDDEN:
                raise UccRuntimeError(
                    f"{e.func}() in a Monte Carlo subject: run the original "
                    "program, not the enriched one"
                )
            fn = _PY_FNS.get(e.func, e.func)
            return f"{fn}(" + ", ".join(expr(a) for a in e.args) + ")"
        raise UccRuntimeError(f"cannot translate {e!r}")

    lines: list[str] = []

    def emit(stmts, scope: str, depth: int):
        pad = "    " * depth
        for stmt in stmts:
            if isinstance(stmt, Assign):
                scoped = f"{scope}.{stmt.name}" if scope else stmt.name
                if scoped in sampled:
                    lines.append(f"{pad}{stmt.name} = {_magic(scoped)}")
                elif isinstance(stmt.value, ListLit):
                    parts = []
                    for idx, elt in enumerate(stmt.value.elts):
                        elt_name = f"{scoped}[{idx}]"
                        parts.append(_magic(elt_name) if elt_name in sampled else expr(elt))
                    lines.append(f"{pad}{stmt.name} = [" + ", ".join(parts) + "]")
                else:
                    lines.append(f"{pad}{stmt.name} = {expr(stmt.value)}")
            elif isinstance(stmt, ExprStmt):
                lines.append(f"{pad}{expr(stmt.value)}")
            elif isinstance(stmt, Return):
                lines.append(f"{pad}return {expr(stmt.value)}")
            elif isinstance(stmt, If):
                lines.append(f"{pad}if {expr(stmt.test)}:")
                emit(stmt.body, scope, depth + 1)
                if stmt.orelse:
                    lines.append(f"{pad}else:")
                    emit(stmt.orelse, scope, depth + 1)
            elif isinstance(stmt, ForRange):
                lo = "0" if stmt.start is None else expr(stmt.start)
                lines.append(f"{pad}for {stmt.var} in range({lo}, {expr(stmt.stop)}):")
                emit(stmt.body, scope, depth + 1)
            elif isinstance(stmt, ForEach):
                lines.append(f"{pad}for {stmt.var} in {expr(stmt.iterable)}:")
                emit(stmt.body, scope, depth + 1)
            elif isinstance(stmt, FuncDef):
                lines.append(f"{pad}def {stmt.name}({', '.join(stmt.params)}):")
                emit(stmt.body, f"{scope}.{stmt.name}" if scope else stmt.name, depth + 1)
            else:
                raise UccRuntimeError(f"cannot translate {stmt!r}")

    emit(program.body, "", 0)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Samplers.
# ---------------------------------------------------------------------------


@dataclass
class McConfig:
    trials: int = 10_000
    seed: int = 0
    event: str | None = None  # expression over final variables, e.g. "y >= 4.5"
    watch: list[str] | None = None  # variables to tally; default: last assigned
    mode: str = "independent"  # independent | perfect | opposite (input coupling)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in ("independent", "perfect", "opposite"):
            raise ValueError(f"unknown sampling mode {self.mode!r}")


@dataclass
class McResult:
    trials: int
    seed: int
    event_freq: float | None
    samples: dict[str, np.ndarray]
    means: dict[str, float]
    warnings: list[str] = field(default_factory=list)

    def histogram(self, var: str, bins: int = 100):
        counts, edges = np.histogram(self.samples[var], bins=bins)
        return edges, counts

    def histogram_csv(self, var: str, bins: int = 100) -> str:
        edges, counts = self.histogram(var, bins)
        rows = ["bin_lo,bin_hi,count"]
        for i, c in enumerate(counts):
            rows.append(f"{float(edges[i])!r},{float(edges[i + 1])!r},{int(c)}")
        return "\n".join(rows) + "\n"


def _interval_sampler(iv: Interval, notes: list[str], name: str):
    if not (math.isfinite(iv.lo) and math.isfinite(iv.hi)):
        raise MissingSampler(f"cannot sample unbounded interval {iv} for {name}")
    notes.append(
        f"{name}: interval {iv} sampled uniformly; this injects a distributional "
        "assumption the interval does not carry"
    )
    return lambda u, gen: iv.lo + u * (iv.hi - iv.lo)


def _pbox_sampler(box: PBox, notes: list[str], name: str):
    grid = levels(box.steps)
    left, right = box.left, box.right
    if not (math.isfinite(left[0]) and math.isfinite(right[-1])):
        raise MissingSampler(f"cannot sample unbounded p-box for {name}")
    if box.is_point_mass:
        v = float(left[0])
        return lambda u, gen: np.full_like(u, v)
    notes.append(
        f"{name}: p-box sampled by a uniform draw between its quantile bounds; "
        "this picks one distribution from the family it encodes"
    )

    def sample(u, gen):
        lo = np.interp(u, grid, left)
        hi = np.interp(u, grid, right)
        w = gen.random(u.shape[0])
        return lo + w * (hi - lo)

    return sample


def _dist_sampler(expr, notes: list[str], name: str, mode: str):
    fam = expr.family
    args = expr.args
    has_interval_params = any(len(a) == 2 for a in args)

    def param(i, gen, n):
        a = args[i]
        if len(a) == 1:
            return np.full(n, float(a[0]))
        lo, hi = float(a[0]), float(a[1])
        return lo + gen.random(n) * (hi - lo)

    if has_interval_params:
        notes.append(
            f"{name}: interval-valued parameters sampled uniformly per trial; "
            "this injects an assumption about the parameter"
        )
    if fam == "uniform":

        def sample_uniform(u, gen):
            a = param(0, gen, u.shape[0])
            b = param(1, gen, u.shape[0])
            return a + u * (b - a)

        return sample_uniform
    if fam == "normal":

        def sample_normal(u, gen):
            return param(0, gen, u.shape[0]) + param(1, gen, u.shape[0]) * norm_ppf_array(u)

        return sample_normal
    if fam in ("beta", "binomial"):
        if mode != "independent":
            raise MissingSampler(
                f"{name}: {fam} sampling under coupled-uniform mode {mode!r} is not supported"
            )
        if fam == "beta":
            return lambda u, gen: gen.beta(param(0, gen, u.shape[0]), param(1, gen, u.shape[0]))
        return lambda u, gen: gen.binomial(
            np.rint(param(0, gen, u.shape[0])).astype(int), param(1, gen, u.shape[0])
        ).astype(float)
    raise MissingSampler(f"{name}: no sampler for family {fam!r}")


def build_samplers(spec: SpecFile, mode: str, steps: int = 200):
    """(name -> sampler(u, gen)) plus the sampling-assumption warnings."""
    notes: list[str] = []
    samplers = {}
    for name in sorted(spec.entries):
        entry = spec.entries[name]
        value = entry.expr.to_value(steps)
        if isinstance(value, float):
            samplers[name] = (lambda v: (lambda u, gen: np.full_like(u, v)))(value)
        elif isinstance(value, Interval):
            samplers[name] = _interval_sampler(value, notes, name)
        elif entry.expr.kind == "dist":
            samplers[name] = _dist_sampler(entry.expr, notes, name, mode)
        elif isinstance(value, PBox):
            samplers[name] = _pbox_sampler(value, notes, name)
        else:
            raise MissingSampler(f"no sampler for {name}")
    return samplers, notes


def _last_assigned(program: Program) -> str | None:
    last = None
    for stmt in program.body:
        if isinstance(stmt, Assign):
            last = stmt.name
    return last


def mc_run(program: Program, spec: SpecFile, cfg: McConfig) -> McResult:
    """Sample inputs per the spec, run the deterministic program, tally."""
    samplers, notes = build_samplers(spec, cfg.mode)
    for note in notes:
        warnings.warn(note, UccWarning, stacklevel=2)

    gen = np.random.Generator(np.random.Philox(key=cfg.seed))
    n = cfg.trials
    names = sorted(samplers)
    if cfg.mode == "independent":
        u_cols = {name: gen.random(n) for name in names}
    else:
        shared = gen.random(n)
        u_cols = {}
        for i, name in enumerate(names):
            if cfg.mode == "perfect" or i % 2 == 0:
                u_cols[name] = shared
            else:
                u_cols[name] = 1.0 - shared
    cols = {name: np.asarray(samplers[name](u_cols[name], gen), dtype=float) for name in names}

    watch = list(cfg.watch) if cfg.watch else []
    if not watch:
        last = _last_assigned(program)
        if last is None:
            raise UccRuntimeError("program assigns no variables to watch")
        watch = [last]

    py_src = emit_python(program, sampled=set(names))
    code = compile(py_src, "<mc-subject>", "exec")
    event_code = None
    if cfg.event:
        event_ast = parse_expression(cfg.event)
        event_code = compile(emit_python_expr(event_ast), "<mc-event>", "eval")

    base = {"math": math, "_square": lambda v: v * v, "_noop": lambda *a: None}
    magic_names = {name: _magic(name) for name in names}
    samples = {v: np.empty(n) for v in watch}
    hits = 0
    for t in range(n):
        env = dict(base)
        for name in names:
            env[magic_names[name]] = cols[name][t]
        exec(code, env)
        for v in watch:
            if v not in env:
                raise UccRuntimeError(f"watched variable {v!r} never assigned")
            samples[v][t] = env[v]
        if event_code is not None and eval(event_code, env):
            hits += 1

    means = {v: float(samples[v].mean()) for v in watch}
    freq = hits / n if event_code is not None else None
    return McResult(
        trials=n, seed=cfg.seed, event_freq=freq, samples=samples, means=means, warnings=notes
    )


def emit_python_expr(expr) -> str:
    prog = Program([ExprStmt(expr)])
    text = emit_python(prog, sampled=set())
    return text.strip()
