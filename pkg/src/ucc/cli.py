"""Command-line entry point.

    ucc compile prog.ms --spec u.spec [--out enriched.ms]
    ucc run     prog.ms [--spec u.spec]        evaluate and export results
    ucc auto    prog.ms                        sig-fig intervals, no spec
    ucc check-deps u.spec                      dependence feasibility report
    ucc mc      prog.ms --spec u.spec --trials N --seed S --event "y >= 4.5"
    ucc repeats prog.ms [--spec u.spec]        repeated-variable report

Exit codes: 0 success, 1 a check failed (infeasible matrix, runtime
error), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from .compiler import CompileOptions, compile_program
from .compiler.repeats import detect_repeats
from .errors import UccError, UccWarning
from .minilang import parse_source
from .pbox import DEFAULT_STEPS
from .runtime import McConfig, eval_program, export_env, mc_run
from .specfile import check_feasibility, parse_spec


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(f"ucc: cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_spec(path: str | None):
    if path is None:
        return None
    return parse_spec(_read(path))


def _compile_options(args) -> CompileOptions:
    return CompileOptions(
        dunno=args.dunno,
        intervalize=getattr(args, "intervalize", False),
        rewrite=getattr(args, "rewrite", False),
    )


def _print_notes(notes) -> None:
    for note in notes:
        print(f"note: {note}", file=sys.stderr)


def cmd_compile(args) -> int:
    spec = _load_spec(args.spec)
    result = compile_program(_read(args.program), spec, _compile_options(args))
    _write(args.out, result.source)
    _print_notes(result.notes)
    return 0


def cmd_auto(args) -> int:
    options = CompileOptions(dunno=args.dunno, intervalize=True, rewrite=args.rewrite)
    result = compile_program(_read(args.program), None, options)
    _write(args.out, result.source)
    _print_notes(result.notes)
    return 0


def cmd_run(args) -> int:
    from .interval import set_sqrt_policy

    if args.steps < 2:
        raise SystemExit("ucc: --steps must be at least 2")
    set_sqrt_policy(strict=args.strict_sqrt)
    spec = _load_spec(args.spec)
    source = _read(args.program)
    if spec is not None or args.intervalize:
        result = compile_program(source, spec, _compile_options(args))
        ast = result.ast
        _print_notes(result.notes)
    else:
        ast = parse_source(source)
    out = eval_program(ast, steps=args.steps, echo=True)
    for diag in out.diagnostics:
        print(f"diagnostic: {diag}", file=sys.stderr)
    _write(args.out, export_env(out.env) + "\n")
    return 0


def cmd_check_deps(args) -> int:
    spec = parse_spec(_read(args.spec))
    report = check_feasibility(spec.dependence)
    report.lints.extend(spec.lints)
    print(report)
    return 0 if report.ok else 1


def cmd_mc(args) -> int:
    spec = parse_spec(_read(args.spec))
    ast = parse_source(_read(args.program))
    cfg = McConfig(
        trials=args.trials,
        seed=args.seed,
        event=args.event,
        watch=args.watch.split(",") if args.watch else None,
        mode=args.mode,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", UccWarning)
        result = mc_run(ast, spec, cfg)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    for var, mean in result.means.items():
        print(f"{var}: mean = {mean!r}")
    if result.event_freq is not None:
        print(f"Pr({args.event}) = {result.event_freq!r}  ({result.trials} trials, seed {result.seed})")
    if args.hist_csv:
        var = next(iter(result.samples))
        _write(args.hist_csv, result.histogram_csv(var))
    return 0


def cmd_repeats(args) -> int:
    spec = _load_spec(args.spec)
    ast = parse_source(_read(args.program))
    if spec is not None and spec.entries:
        from .compiler.substitute import substitute_assignments

        ast = substitute_assignments(ast, spec, [])
    report = detect_repeats(ast, spec)
    print(report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucc", description="uncertainty compiler")
    sub = parser.add_subparsers(dest="command", required=True)

    def common_compile_flags(p, with_spec=True):
        if with_spec:
            p.add_argument("--spec", help="uncertainty spec file")
        p.add_argument("--dunno", choices=("always", "sometimes", "error"), default="always",
                       help="policy for DUNNO conditionals (default: always)")
        p.add_argument("--rewrite", action="store_true",
                       help="apply the single-use rewrite directory")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("compile", help="translate a program using a spec")
    p.add_argument("program")
    common_compile_flags(p)
    p.add_argument("--intervalize", action="store_true",
                   help="also intervalize remaining float literals")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("auto", help="automatic mode: sig-fig intervals, no spec")
    p.add_argument("program")
    common_compile_flags(p, with_spec=False)
    p.set_defaults(fn=cmd_auto)

    p = sub.add_parser("run", help="compile (if a spec is given) and evaluate")
    p.add_argument("program")
    common_compile_flags(p)
    p.add_argument("--intervalize", action="store_true")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS,
                   help=f"p-box discretization levels (default {DEFAULT_STEPS})")
    p.add_argument("--strict-sqrt", action="store_true",
                   help="error on sqrt of partially negative ranges instead of clamping")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("check-deps", help="dependence matrix feasibility")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_check_deps)

    p = sub.add_parser("mc", help="Monte Carlo harness over the original program")
    p.add_argument("program")
    p.add_argument("--spec", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--event", help="event expression, e.g. 'y >= 4.5'")
    p.add_argument("--watch", help="comma-separated variables to tally")
    p.add_argument("--mode", choices=("independent", "perfect", "opposite"),
                   default="independent", help="input coupling for the sampler")
    p.add_argument("--hist-csv", help="write a 100-bin histogram CSV here")
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("repeats", help="repeated-variable report")
    p.add_argument("program")
    p.add_argument("--spec")
    p.set_defaults(fn=cmd_repeats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise
    except UccError as exc:
        print(f"ucc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
