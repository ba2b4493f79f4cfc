"""Compilation pipeline: substitute, intervalize, rewrite, annotate, emit."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..minilang.nodes import Program
from ..minilang.parser import parse_source
from ..minilang.emitter import emit_source
from ..specfile import SpecFile
from .substitute import CONSTRUCTOR_NAMES, collapse_uncertain, substitute_assignments
from .intervalize import auto_intervalize, sigfig_bounds
from .operators import compute_taint, rewrite_operators
from .repeats import RepeatReport, detect_repeats
from .rewrites import apply_rewrite_directory

__all__ = [
    "CompileOptions",
    "CompileResult",
    "compile_program",
    "collapse_uncertain",
    "substitute_assignments",
    "auto_intervalize",
    "sigfig_bounds",
    "rewrite_operators",
    "compute_taint",
    "detect_repeats",
    "apply_rewrite_directory",
    "CONSTRUCTOR_NAMES",
]


@dataclass
class CompileOptions:
    dunno: str = "always"  # always | sometimes | error
    intervalize: bool = False
    rewrite: bool = False


def _lint_dependence_names(ast: Program, spec: SpecFile, notes: list[str]) -> None:
    """Every dependence pair should reference declared or assigned names."""
    from ..minilang.analysis import find_assignments

    known = set(spec.entries) | set(spec.constants)
    known.update(site.name for site in find_assignments(ast))
    for a, b in spec.dependence.pairs():
        for name in (a, b):
            if name not in known:
                notes.append(
                    f"warning: dependence pair mentions {name!r}, which is neither "
                    "declared in the spec nor assigned in the source"
                )


@dataclass
class CompileResult:
    ast: Program
    notes: list[str] = field(default_factory=list)
    repeats: RepeatReport | None = None

    @property
    def source(self) -> str:
        return emit_source(self.ast)


def compile_program(
    source: str | Program,
    spec: SpecFile | None = None,
    options: CompileOptions | None = None,
) -> CompileResult:
    options = options or CompileOptions()
    ast = parse_source(source) if isinstance(source, str) else source
    notes: list[str] = []

    if spec is not None:
        _lint_dependence_names(ast, spec, notes)
    if spec is not None and spec.entries:
        ast = substitute_assignments(ast, spec, notes)
    if options.intervalize:
        constants = set(spec.constants) if spec is not None else set()
        ast = auto_intervalize(ast, constants, notes)
    repeats = detect_repeats(ast, spec)
    if not repeats.ok:
        notes.append(str(repeats))
    if options.rewrite:
        ast = apply_rewrite_directory(ast, spec, notes)
    ast = rewrite_operators(ast, spec, dunno=options.dunno, notes=notes)
    return CompileResult(ast=ast, notes=notes, repeats=repeats)
