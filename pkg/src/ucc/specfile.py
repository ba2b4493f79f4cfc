"""The uncertainty spec file: what uncertainty each source variable carries.

Line-oriented, `#` comments, one declaration per line:

    a: [3, 7]                       # interval
    b: 5 +- 2                       # value plus-minus error
    m: normal([-1, 1], [1, 2])      # distribution, interval parameters
    p: 2 out of 10                  # k-out-of-n confidence box
    q: about 7.2                    # hedge word
    r: between 3 and 7
    n: 42                           # precise scalar (overrides a literal)
    x: [0, 1] ensemble "items from batch 7"
    dependence a, b: independent    # or frechet|perfect|opposite|equal|rho
    constant g_factor               # never substituted, even in auto mode
    copy c: perfect                 # how to read the assignment c = a
    policy 12: sometimes            # dunno policy override for site 12

Variable names may be dotted (function locals, `calculateVelocity.g`) and
may index a list literal (`velocities[1]`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

import numpy as np

from .dependence import Dependence, EQUAL, FRECHET, parse_dependence
from .distributions import DistSpec, kn_cbox, make_pbox
from .errors import DuplicateEntry, MalformedInterval, SpecError, UnknownHedge
from .hedges import hedge
from .interval import Interval
from .pbox import DEFAULT_STEPS

_NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*(?:\[[0-9]+\])?"
_NUM = r"[-+]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?"
_NAME_RE = re.compile(_NAME)
_NUM_RE = re.compile(_NUM)

_FAMILIES = ("uniform", "normal", "beta", "binomial")
_ONE_WORD_HEDGES = ("about", "around", "count", "almost", "over", "above", "below", "order")


@dataclass(frozen=True)
class UncertainExpr:
    """One declared uncertainty; numeric literals kept as written."""

    kind: str  # interval | plusminus | dist | hedge | knbox | scalar
    args: tuple = ()
    family: str | None = None  # distribution family or hedge word

    def to_value(self, steps: int = DEFAULT_STEPS):
        """The runtime object this declaration denotes."""
        if self.kind == "scalar":
            return float(self.args[0])
        if self.kind == "interval":
            lo, hi = (float(a) for a in self.args)
            return Interval(lo, hi)
        if self.kind == "plusminus":
            v, e = (_dec(a) for a in self.args)
            return Interval(float(v - e), float(v + e))
        if self.kind == "hedge":
            return hedge(self.family, *self.args, steps=steps)
        if self.kind == "knbox":
            return kn_cbox(int(self.args[0]), int(self.args[1]), steps=steps)
        if self.kind == "dist":
            params = tuple(
                Interval(float(a[0]), float(a[1])) if len(a) == 2 else Interval.point(float(a[0]))
                for a in self.args
            )
            return make_pbox(DistSpec(self.family, params), n=steps)
        raise ValueError(f"bad expr kind {self.kind!r}")

    def to_source(self) -> str:
        """MiniScript constructor call equivalent to this declaration."""
        if self.kind == "scalar":
            return self.args[0]
        if self.kind == "dist":
            parts = [f"[{a[0]}, {a[1]}]" if len(a) == 2 else a[0] for a in self.args]
            return f"{self.family}({', '.join(parts)})"
        if self.kind == "knbox":
            return f"kn({self.args[0]}, {self.args[1]})"
        if self.kind == "interval":
            return f"interval({self.args[0]}, {self.args[1]})"
        # plus-minus and hedges reduce to intervals (or kn above) at compile time
        v = self.to_value()
        if isinstance(v, Interval):
            lo = "-inf" if v.lo == float("-inf") else repr(v.lo)
            hi = "inf" if v.hi == float("inf") else repr(v.hi)
            return f"interval({lo}, {hi})"
        raise ValueError(f"no source form for {self}")

    def pretty(self) -> str:
        if self.kind == "scalar":
            return self.args[0]
        if self.kind == "interval":
            return f"[{self.args[0]}, {self.args[1]}]"
        if self.kind == "plusminus":
            return f"{self.args[0]} +- {self.args[1]}"
        if self.kind == "hedge":
            if self.family == "between":
                return f"between {self.args[0]} and {self.args[1]}"
            return f"{self.family} {self.args[0]}"
        if self.kind == "knbox":
            return f"{self.args[0]} out of {self.args[1]}"
        if self.kind == "dist":
            parts = [f"[{a[0]}, {a[1]}]" if len(a) == 2 else a[0] for a in self.args]
            return f"{self.family}({', '.join(parts)})"
        raise ValueError(f"bad expr kind {self.kind!r}")


def _dec(text: str) -> Decimal:
    try:
        return Decimal(text)
    except InvalidOperation:
        raise SpecError(f"bad number {text!r}") from None


@dataclass(frozen=True)
class SpecEntry:
    name: str
    expr: UncertainExpr
    ensemble: str | None = None
    line: int = field(default=0, compare=False)


class DependenceMatrix:
    """Symmetric map of variable pairs to dependence; absent pairs are Frechet."""

    def __init__(self):
        self._pairs: dict[tuple[str, str], Dependence] = {}

    @staticmethod
    def _key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def set(self, a: str, b: str, dep: Dependence) -> None:
        if a == b:
            raise SpecError(f"dependence of {a} with itself is fixed (equal)")
        self._pairs[self._key(a, b)] = dep

    def get(self, a: str, b: str) -> Dependence:
        if a == b:
            return EQUAL
        return self._pairs.get(self._key(a, b), FRECHET)

    def declared(self, a: str, b: str) -> bool:
        return self._key(a, b) in self._pairs

    def pairs(self):
        return dict(self._pairs)

    def names(self) -> list[str]:
        out = set()
        for a, b in self._pairs:
            out.add(a)
            out.add(b)
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, DependenceMatrix) and self._pairs == other._pairs


@dataclass
class SpecFile:
    entries: dict[str, SpecEntry] = field(default_factory=dict)
    dependence: DependenceMatrix = field(default_factory=DependenceMatrix)
    constants: set[str] = field(default_factory=set)
    copy_policy: dict[str, str] = field(default_factory=dict)
    dunno_policy: dict[str, str] = field(default_factory=dict)
    lints: list[str] = field(default_factory=list)

    def copy_policy_for(self, name: str) -> str:
        return self.copy_policy.get(name, "alias")

    def pretty(self) -> str:
        lines = []
        for name, entry in self.entries.items():
            s = f"{name}: {entry.expr.pretty()}"
            if entry.ensemble is not None:
                s += f' ensemble "{entry.ensemble}"'
            lines.append(s)
        for name in sorted(self.constants):
            lines.append(f"constant {name}")
        for (a, b), dep in sorted(self.dependence.pairs().items()):
            val = repr(dep.r) if dep.kind == "rho" else dep.kind
            lines.append(f"dependence {a}, {b}: {val}")
        for name, pol in sorted(self.copy_policy.items()):
            lines.append(f"copy {name}: {pol}")
        for site, pol in sorted(self.dunno_policy.items()):
            lines.append(f"policy {site}: {pol}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __eq__(self, other):
        if not isinstance(other, SpecFile):
            return NotImplemented
        return (
            self.entries == other.entries
            and self.dependence == other.dependence
            and self.constants == other.constants
            and self.copy_policy == other.copy_policy
            and self.dunno_policy == other.dunno_policy
        )


def _strip_comment(line: str) -> str:
    out = []
    in_str = False
    for ch in line:
        if ch == '"':
            in_str = not in_str
        if ch == "#" and not in_str:
            break
        out.append(ch)
    return "".join(out).rstrip()


def _match_num(text: str, lineno: int) -> str:
    m = _NUM_RE.fullmatch(text.strip())
    if not m:
        raise SpecError(f"expected a number, got {text.strip()!r}", lineno)
    return text.strip()


def _parse_dist_args(argtext: str, lineno: int) -> tuple:
    args = []
    depth = 0
    current = ""
    parts = []
    for ch in argtext:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    if current.strip():
        parts.append(current)
    for part in parts:
        part = part.strip()
        if part.startswith("["):
            if not part.endswith("]"):
                raise SpecError(f"malformed interval argument {part!r}", lineno)
            inner = part[1:-1].split(",")
            if len(inner) != 2:
                raise SpecError(f"interval argument needs two bounds: {part!r}", lineno)
            lo, hi = (_match_num(v, lineno) for v in inner)
            if float(lo) > float(hi):
                raise MalformedInterval(f"interval bounds out of order in {part!r}", lineno)
            args.append((lo, hi))
        else:
            args.append((_match_num(part, lineno),))
    return tuple(args)


def _parse_uexpr(text: str, lineno: int) -> UncertainExpr:
    text = text.strip()
    # [a, b]
    if text.startswith("["):
        if not text.endswith("]"):
            raise SpecError(f"malformed interval {text!r}", lineno)
        inner = text[1:-1].split(",")
        if len(inner) != 2:
            raise SpecError(f"interval needs two bounds: {text!r}", lineno)
        lo, hi = (_match_num(v, lineno) for v in inner)
        if float(lo) > float(hi):
            raise MalformedInterval(f"interval bounds out of order: {text!r}", lineno)
        return UncertainExpr("interval", (lo, hi))
    # a +- e
    if "+-" in text:
        v, e = text.split("+-", 1)
        v, e = _match_num(v, lineno), _match_num(e, lineno)
        if float(e) < 0:
            raise SpecError(f"negative error bound in {text!r}", lineno)
        return UncertainExpr("plusminus", (v, e))
    # family(args)
    m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)", text)
    if m:
        fam = m.group(1).lower()
        if fam not in _FAMILIES:
            raise UnknownHedge(f"unknown distribution family {m.group(1)!r}", lineno)
        return UncertainExpr("dist", _parse_dist_args(m.group(2), lineno), family=fam)
    # between x and y
    m = re.fullmatch(r"between\s+(\S+)\s+and\s+(\S+)", text, re.IGNORECASE)
    if m:
        return UncertainExpr(
            "hedge", (_match_num(m.group(1), lineno), _match_num(m.group(2), lineno)), family="between"
        )
    # k out of n
    m = re.fullmatch(rf"({_NUM})\s+out\s+of\s+({_NUM})", text, re.IGNORECASE)
    if m:
        k, n = m.group(1), m.group(2)
        if not float(k).is_integer() or not float(n).is_integer():
            raise SpecError(f"'k out of n' needs integers: {text!r}", lineno)
        if not 0 <= int(float(k)) <= int(float(n)):
            raise SpecError(f"need 0 <= k <= n in {text!r}", lineno)
        return UncertainExpr("knbox", (k, n))
    # two-word hedges
    m = re.fullmatch(rf"(at\s+most|at\s+least)\s+({_NUM})", text, re.IGNORECASE)
    if m:
        word = " ".join(m.group(1).lower().split())
        return UncertainExpr("hedge", (m.group(2),), family=word)
    # one-word hedges
    m = re.fullmatch(rf"([A-Za-z]+)\s+({_NUM})", text)
    if m:
        word = m.group(1).lower()
        if word not in _ONE_WORD_HEDGES:
            raise UnknownHedge(f"unknown hedge word {m.group(1)!r}", lineno)
        return UncertainExpr("hedge", (m.group(2),), family=word)
    # precise scalar
    if _NUM_RE.fullmatch(text):
        return UncertainExpr("scalar", (text,))
    raise SpecError(f"cannot parse uncertainty expression {text!r}", lineno)


def parse_spec(text: str) -> SpecFile:
    spec = SpecFile()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("constant "):
            name = line[len("constant "):].strip()
            if not _NAME_RE.fullmatch(name):
                raise SpecError(f"bad constant name {name!r}", lineno)
            if name in spec.entries:
                raise DuplicateEntry(f"{name} is declared both uncertain and constant", lineno)
            spec.constants.add(name)
            continue
        if line.startswith("dependence "):
            body = line[len("dependence "):]
            if ":" not in body:
                raise SpecError("dependence line needs 'name, name: kind'", lineno)
            names, kind = body.split(":", 1)
            parts = [p.strip() for p in names.split(",")]
            if len(parts) != 2 or not all(_NAME_RE.fullmatch(p) for p in parts):
                raise SpecError(f"bad dependence pair {names.strip()!r}", lineno)
            kind = kind.strip()
            try:
                dep = parse_dependence(kind)
            except ValueError as exc:
                raise SpecError(str(exc), lineno) from None
            if dep.kind == "rho" and dep.r == 0.0:
                spec.lints.append(
                    f"line {lineno}: numeric 0 dependence between {parts[0]} and {parts[1]} "
                    "read as independence; write 'independent' if that is meant"
                )
            spec.dependence.set(parts[0], parts[1], dep)
            continue
        if line.startswith("copy "):
            body = line[len("copy "):]
            name, _, pol = body.partition(":")
            name, pol = name.strip(), pol.strip()
            if pol not in ("alias", "perfect", "copy"):
                raise SpecError(f"copy policy must be alias|perfect|copy, got {pol!r}", lineno)
            spec.copy_policy[name] = pol
            continue
        if line.startswith("policy "):
            body = line[len("policy "):]
            site, _, pol = body.partition(":")
            site, pol = site.strip(), pol.strip()
            if pol not in ("always", "sometimes", "error"):
                raise SpecError(f"dunno policy must be always|sometimes|error, got {pol!r}", lineno)
            spec.dunno_policy[site] = pol
            continue
        if ":" in line:
            name, _, rest = line.partition(":")
            name = name.strip()
            if not _NAME_RE.fullmatch(name):
                raise SpecError(f"bad variable name {name!r}", lineno)
            if name in spec.entries:
                raise DuplicateEntry(f"duplicate entry for {name}", lineno)
            if name in spec.constants:
                raise DuplicateEntry(f"{name} is declared both uncertain and constant", lineno)
            ensemble = None
            m = re.search(r'\s+ensemble\s+"([^"]*)"\s*$', rest)
            if m:
                ensemble = m.group(1)
                rest = rest[: m.start()]
            expr = _parse_uexpr(rest.strip(), lineno)
            spec.entries[name] = SpecEntry(name, expr, ensemble, lineno)
            continue
        raise SpecError(f"cannot parse line {raw.strip()!r}", lineno)
    return spec


# ---------------------------------------------------------------------------
# Feasibility screen for the dependence matrix.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityProblem:
    names: tuple[str, ...]
    matrix: tuple  # row-major tuple of tuples
    eig_min: float
    det: float
    reason: str

    def __str__(self):
        return f"{self.reason}: variables {', '.join(self.names)}"


@dataclass
class FeasibilityReport:
    ok: bool
    problems: list[FeasibilityProblem]
    lints: list[str]

    def __str__(self):
        if self.ok:
            lines = ["dependence matrix: feasible"]
        else:
            lines = ["dependence matrix: INFEASIBLE"]
            for p in self.problems:
                lines.append(f"  - {p}")
                for name, row in zip(p.names, p.matrix):
                    lines.append(f"      {name:>12}  " + "  ".join(f"{v:+.3g}" for v in row))
                lines.append(f"      min eigenvalue {p.eig_min:.6g}, determinant {p.det:.6g}")
        for lint in self.lints:
            lines.append(f"  note: {lint}")
        return "\n".join(lines)


def _maximal_cliques(adj: dict[str, set[str]]) -> list[set[str]]:
    # Bron-Kerbosch with pivoting; matrices here are tiny.
    cliques: list[set[str]] = []

    def bk(r: set[str], p: set[str], x: set[str]):
        if not p and not x:
            if len(r) >= 2:
                cliques.append(set(r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p), default=None)
        for v in sorted(p - (adj[pivot] if pivot else set())):
            bk(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(adj), set())
    return cliques


def check_feasibility(matrix: DependenceMatrix, tol: float = 1e-9) -> FeasibilityReport:
    """Sound-but-incomplete screen: eigenvalues of fully-constrained
    principal submatrices plus a sign-transitivity check on triples.

    Frechet (undeclared) pairs are never constrained, so only variable
    subsets whose pairs are all declared can be screened.
    """
    problems: list[FeasibilityProblem] = []
    lints: list[str] = []
    names = matrix.names()
    constrained: dict[str, set[str]] = {n: set() for n in names}
    for (a, b), dep in matrix.pairs().items():
        if dep.correlation_proxy() is not None:
            constrained[a].add(b)
            constrained[b].add(a)

    def proxy(a: str, b: str) -> float:
        return 1.0 if a == b else matrix.get(a, b).correlation_proxy()

    for clique in sorted(_maximal_cliques(constrained), key=lambda c: sorted(c)):
        sub = sorted(clique)
        m = np.array([[proxy(a, b) for b in sub] for a in sub])
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -tol:
            problems.append(
                FeasibilityProblem(
                    names=tuple(sub),
                    matrix=tuple(map(tuple, m)),
                    eig_min=float(eigs.min()),
                    det=float(np.linalg.det(m)),
                    reason="constrained submatrix is not positive semi-definite",
                )
            )

    # Sign transitivity on hard (+-1 / 0) triples: p*p => p, p*o => o, o*o => p.
    hard = {}
    for (a, b), dep in matrix.pairs().items():
        r = dep.correlation_proxy()
        if r in (-1.0, 0.0, 1.0):
            hard[(a, b) if a <= b else (b, a)] = r
    hard_names = sorted({n for pair in hard for n in pair})
    for i, a in enumerate(hard_names):
        for j in range(i + 1, len(hard_names)):
            b = hard_names[j]
            for k in range(j + 1, len(hard_names)):
                c = hard_names[k]
                trio = [(a, b), (a, c), (b, c)]
                if not all(t in hard for t in trio):
                    continue
                rab, rac, rbc = (hard[t] for t in trio)
                if abs(rac) == 1.0 and abs(rbc) == 1.0 and rab != rac * rbc:
                    already = any(set((a, b, c)) <= set(p.names) for p in problems)
                    if not already:
                        m = np.array([[proxy(x, y) for y in (a, b, c)] for x in (a, b, c)])
                        problems.append(
                            FeasibilityProblem(
                                names=(a, b, c),
                                matrix=tuple(map(tuple, m)),
                                eig_min=float(np.linalg.eigvalsh(m).min()),
                                det=float(np.linalg.det(m)),
                                reason=(
                                    f"sign conflict: {a}~{c} and {b}~{c} imply "
                                    f"{a}~{b} = {rac * rbc:+.0f}, but {rab:+.0f} is declared"
                                ),
                            )
                        )
    return FeasibilityReport(ok=not problems, problems=problems, lints=lints)
