"""ucc: an uncertainty compiler and its intrusive UQ runtime.

The package translates MiniScript programs into uncertainty-enriched
MiniScript (substituting declared uncertain objects for literal
assignments and inserting dependence-aware arithmetic calls), evaluates
the enriched programs over intervals, p-boxes and confidence boxes, and
provides a Monte Carlo harness for comparison runs.
"""

from .compiler import CompileOptions, compile_program
from .dependence import Dependence, FRECHET, INDEPENDENT, OPPOSITE, PERFECT, parse_dependence
from .distributions import DistSpec, kn_cbox, make_pbox, quantile
from .hedges import hedge
from .interval import Interval
from .logic import DUNNO, FALSE, TRUE, Logical, always, sometimes
from .pbox import PBox, from_interval, point_mass
from .runtime import McConfig, compare_enclosure, eval_program, mc_run
from .specfile import SpecFile, check_feasibility, parse_spec

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "PBox",
    "Logical",
    "TRUE",
    "FALSE",
    "DUNNO",
    "always",
    "sometimes",
    "Dependence",
    "FRECHET",
    "INDEPENDENT",
    "PERFECT",
    "OPPOSITE",
    "parse_dependence",
    "DistSpec",
    "quantile",
    "make_pbox",
    "kn_cbox",
    "from_interval",
    "point_mass",
    "hedge",
    "SpecFile",
    "parse_spec",
    "check_feasibility",
    "CompileOptions",
    "compile_program",
    "eval_program",
    "McConfig",
    "mc_run",
    "compare_enclosure",
    "__version__",
]
