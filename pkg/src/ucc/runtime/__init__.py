"""Runtime: evaluator for enriched programs, Monte Carlo harness,
enclosure comparison, and result export."""

from .evaluator import Evaluator, ExecResult, eval_program, format_value
from .montecarlo import McConfig, McResult, build_samplers, emit_python, mc_run
from .enclosure import EnclosureReport, compare_enclosure
from .export import export_env

__all__ = [
    "Evaluator",
    "ExecResult",
    "eval_program",
    "format_value",
    "McConfig",
    "McResult",
    "mc_run",
    "build_samplers",
    "emit_python",
    "EnclosureReport",
    "compare_enclosure",
    "export_env",
]
