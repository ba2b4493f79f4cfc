import json
import math
import warnings

import numpy as np
import pytest

from ucc.compiler import compile_program
from ucc.errors import DivisionByUncertainZero, DunnoBranch, MissingSampler, UccRuntimeError, UccWarning
from ucc.interval import Interval
from ucc.minilang import parse_source
from ucc.pbox import PBox
from ucc.runtime import (
    McConfig,
    compare_enclosure,
    eval_program,
    export_env,
    mc_run,
)
from ucc.specfile import parse_spec

I = Interval


def run(src: str, steps=100):
    return eval_program(parse_source(src), steps=steps)


def test_plain_arithmetic():
    env = run("a = 2\nb = a * 3 + 1\nc = b / 2\nd = 2 ** 3\n").env
    assert env["b"] == 7 and env["c"] == 3.5 and env["d"] == 8


def test_functions_and_loops():
    src = (
        "def poly(x):\n"
        "    return x * x + 1\n"
        "total = 0\n"
        "for i in range(0, 4):\n"
        "    total = total + poly(i)\n"
        "xs = [1, 2, 3]\n"
        "s = 0\n"
        "for v in xs:\n"
        "    s = s + v\n"
    )
    env = run(src).env
    assert env["total"] == sum(x * x + 1 for x in range(4))
    assert env["s"] == 6


def test_builtin_constants_and_math():
    env = run("c = cos(pi)\nl = ln(e)\nr = sqrt(16)\na = arctan(1)\n").env
    assert env["c"] == pytest.approx(-1.0)
    assert env["l"] == pytest.approx(1.0)
    assert env["r"] == 4.0
    assert env["a"] == pytest.approx(math.pi / 4)


def test_interval_constructor_and_promotion():
    env = run("x = interval(1, 2)\ny = x + 1\nz = 2 * x\n").env
    assert env["y"] == I(2, 3)
    assert env["z"] == I(2, 4)


def test_uq_calls_with_dep_codes():
    src = (
        "a = interval(2, 3)\n"
        "b = interval(4, 5)\n"
        "f = mul(a, b, 'f')\n"
        "o = mul(a, b, 'o')\n"
        "p = mul(a, b, 'p')\n"
    )
    env = run(src).env
    assert env["f"] == I(8, 15)
    assert env["o"] == I(10, 12)
    assert env["p"] == I(8, 15)


def test_same_object_identity():
    env = run("x = interval(-1, 2)\ns = sub(x, x, 'f')\nm = mul(x, x, 'f')\n").env
    assert env["s"] == I(0, 0)
    assert env["m"] == I(0, 4)  # square semantics, not [-2, 4]
    env2 = run("x = interval(-1, 2)\ny = fresh(x)\nm = mul(x, y, 'f')\n").env
    assert env2["m"] == I(-2, 4)


def test_pbox_constructors():
    env = run("u = uniform(0, 1)\nn = normal([-1, 1], [1, 2])\nk = kn(2, 10)\n", steps=80).env
    assert isinstance(env["u"], PBox) and env["u"].kind == "distribution"
    assert env["n"].kind == "pbox"
    assert env["k"].kind == "cbox"
    env2 = run("m = normal(0, 1)\ns = add(m, m, 'p')\n", steps=80).env
    assert np.allclose(env2["s"].left, 2 * env2["m"].left)


def test_mixed_interval_pbox():
    env = run("u = uniform(0, 1)\nv = interval(0, 1)\nw = add(u, v, 'f')\n", steps=80).env
    assert isinstance(env["w"], PBox)
    assert env["w"].support.lo >= -1e-12 and env["w"].support.hi <= 2.0


def test_comparisons_tristate():
    env = run(
        "a = interval(1, 2)\n"
        "b = interval(3, 4)\n"
        "t = lt(a, b, 'f')\n"
        "d = lt(a, interval(1.5, 3), 'f')\n"
        "n = eq(a, a, 'f')\n"
        "q = eqq(a, interval(1, 2), 'f')\n"
    ).env
    assert env["t"].is_true
    assert env["d"].is_dunno
    assert env["n"].is_true  # same object: same quantity
    assert env["q"].is_true


def test_if_on_logical_and_dunno_error():
    src = "a = interval(0, 1)\nif lt(a, 2, 'f'):\n    ok = 1\nelse:\n    ok = 0\n"
    assert run(src).env["ok"] == 1
    bad = "a = interval(0, 1)\nif lt(a, 0.5, 'f'):\n    ok = 1\nelse:\n    ok = 0\n"
    with pytest.raises(DunnoBranch):
        run(bad)
    wrapped = "a = interval(0, 1)\nif sometimes(lt(a, 0.5, 'f')):\n    ok = 1\nelse:\n    ok = 0\n"
    assert run(wrapped).env["ok"] == 1


def test_division_error_and_domain():
    with pytest.raises(DivisionByUncertainZero):
        run("x = div(1, interval(-1, 1), 'f')\n")
    out = run("r = sqrt(interval(-1, 1))\n")
    assert out.env["r"] == I(0, 1.0000000000000002)
    assert out.diagnostics


def test_intersect_builtin():
    env = run("x = intersect(interval(1, 10), interval(2, 10))\n").env
    assert env["x"] == I(2, 10)


def test_print_and_format():
    out = run("print(interval(1, 2))\nprint(3.5)\nprint(lt(interval(0,1), 2, 'f'))\n")
    assert out.printed == ["[1.0, 2.0]", "3.5", "true"]


def test_determinism_of_eval():
    src = "u = normal(0, 1)\ns = add(u, u, 'i')\n"
    a = run(src, steps=64).env["s"]
    b = run(src, steps=64).env["s"]
    assert (a.left == b.left).all() and (a.right == b.right).all()


def test_export_schema():
    out = run("a = interval(1, 2)\nb = 3\nu = uniform(0, 1)\nl = lt(a, 5, 'f')\n", steps=50)
    doc = json.loads(export_env(out.env))
    assert doc["vars"]["a"] == {"kind": "interval", "lo": 1.0, "hi": 2.0}
    assert doc["vars"]["b"]["kind"] == "scalar"
    assert doc["vars"]["u"]["kind"] == "distribution"
    assert len(doc["vars"]["u"]["left"]) == 50
    assert doc["vars"]["l"]["state"] == "true"


# --- Monte Carlo harness ---


def _quiet_mc(*args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UccWarning)
        return mc_run(*args, **kwargs)


def test_mc_deterministic_same_seed(corpus):
    ast = parse_source(corpus("sum5.ms"))
    spec = parse_spec(corpus("sum5.spec"))
    cfg = McConfig(trials=5000, seed=42, event="y >= 4.5", watch=["y"])
    r1 = _quiet_mc(ast, spec, cfg)
    r2 = _quiet_mc(ast, spec, cfg)
    assert r1.event_freq == r2.event_freq
    assert np.array_equal(r1.samples["y"], r2.samples["y"])
    r3 = _quiet_mc(ast, spec, McConfig(trials=5000, seed=43, event="y >= 4.5", watch=["y"]))
    assert not np.array_equal(r1.samples["y"], r3.samples["y"])


def test_mc_single_trial_degenerate():
    ast = parse_source("a = 1.0\ny = a * 2\n")
    spec = parse_spec("a: 1.0\n")
    r = _quiet_mc(ast, spec, McConfig(trials=1, seed=0, event="y >= 1", watch=["y"]))
    assert r.event_freq in (0.0, 1.0) and r.event_freq == 1.0
    assert r.samples["y"][0] == 2.0


def test_mc_warns_on_interval_sampling(corpus):
    ast = parse_source(corpus("sum5.ms"))
    spec = parse_spec(corpus("sum5.spec"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        mc_run(ast, spec, McConfig(trials=10, seed=0, watch=["y"]))
    assert any("uniform" in str(w.message) for w in caught)


def test_mc_distribution_sampling_exact():
    ast = parse_source("m = 0.0\ny = m + 1\n")
    spec = parse_spec("m: normal(0, 1)\n")
    r = _quiet_mc(ast, spec, McConfig(trials=40_000, seed=7, watch=["y"]))
    assert abs(r.means["y"] - 1.0) < 0.02
    assert abs(np.std(r.samples["y"]) - 1.0) < 0.02


def test_mc_modes():
    ast = parse_source("a = 0.5\nb = 0.5\ny = a + b\n")
    spec = parse_spec("a: [0, 1]\nb: [0, 1]\n")
    perfect = _quiet_mc(ast, spec, McConfig(trials=2000, seed=3, watch=["y"], mode="perfect"))
    opposite = _quiet_mc(ast, spec, McConfig(trials=2000, seed=3, watch=["y"], mode="opposite"))
    assert np.std(perfect.samples["y"]) > np.std(opposite.samples["y"])
    assert np.allclose(opposite.samples["y"], 1.0)  # u + (1-u)


def test_mc_missing_sampler():
    ast = parse_source("a = 1.0\ny = a\n")
    spec = parse_spec("a: at least 1\n")
    with pytest.raises(MissingSampler):
        _quiet_mc(ast, spec, McConfig(trials=10, seed=0, watch=["y"]))


def test_mc_rejects_enriched_source():
    ast = parse_source("a = interval(0, 1)\ny = add(a, 1, 'f')\n")
    spec = parse_spec("a: [0, 1]\n")
    with pytest.raises(UccRuntimeError):
        _quiet_mc(ast, spec, McConfig(trials=5, seed=0, watch=["y"]))


def test_mc_histogram_csv(corpus):
    ast = parse_source(corpus("sum5.ms"))
    spec = parse_spec(corpus("sum5.spec"))
    r = _quiet_mc(ast, spec, McConfig(trials=500, seed=5, watch=["y"]))
    csv = r.histogram_csv("y")
    lines = csv.strip().splitlines()
    assert lines[0] == "bin_lo,bin_hi,count"
    assert len(lines) == 101
    assert sum(int(row.split(",")[2]) for row in lines[1:]) == 500
    # edges are plain floats, parseable by anything
    lo, hi, _ = lines[1].split(",")
    assert float(lo) < float(hi)
    assert "np." not in csv


def test_mc_convergence_rate():
    # the estimate tightens roughly as 1/sqrt(trials)
    ast = parse_source("a = 0.5\ny = a\n")
    spec = parse_spec("a: [0, 1]\n")
    p = 0.25  # Pr(y >= 0.75) under the uniform sampling assumption
    small = _quiet_mc(ast, spec, McConfig(trials=10_000, seed=11, event="y >= 0.75", watch=["y"]))
    big = _quiet_mc(ast, spec, McConfig(trials=160_000, seed=11, event="y >= 0.75", watch=["y"]))
    sigma_small = math.sqrt(p * (1 - p) / 10_000)
    sigma_big = math.sqrt(p * (1 - p) / 160_000)
    assert abs(small.event_freq - p) < 5 * sigma_small
    assert abs(big.event_freq - p) < 5 * sigma_big


# --- enclosure comparison ---


def test_enclosure_positive_and_negative(corpus):
    src = corpus("sum5.ms")
    spec = parse_spec(corpus("sum5.spec"))
    compiled = compile_program(src, spec)
    env = eval_program(compiled.ast).env
    mc = _quiet_mc(parse_source(src), spec, McConfig(trials=5000, seed=2, watch=["y"]))
    good = compare_enclosure(env, mc.samples)
    assert good.ok
    # negative control: visibly shrunk bounds must be flagged
    y = env["y"]
    w = y.width
    shrunk = {"y": I(y.lo + 0.2 * w, y.hi - 0.2 * w)}
    bad = compare_enclosure(shrunk, mc.samples)
    assert not bad.ok and "samples outside" in str(bad)


def test_enclosure_degenerate_scalar():
    ast = parse_source("a = 2.0\ny = a + 1\n")
    spec = parse_spec("a: 2.0\n")
    mc = _quiet_mc(ast, spec, McConfig(trials=50, seed=1, watch=["y"]))
    assert compare_enclosure({"y": 3.0}, mc.samples).ok
    assert not compare_enclosure({"y": 2.5}, mc.samples).ok


def test_enclosure_pbox_bounds():
    from ucc.dependence import INDEPENDENT
    from ucc.distributions import DistSpec, make_pbox
    from ucc.pbox import conv_add

    rng = np.random.default_rng(0)
    u = make_pbox(DistSpec("uniform", (I.point(0), I.point(1))), 200)
    s = conv_add(u, u, INDEPENDENT)
    xs = rng.random(20_000) + rng.random(20_000)
    assert compare_enclosure({"s": s}, {"s": xs}).ok
    # shrink: scale samples outward so the ecdf escapes
    bad = compare_enclosure({"s": s}, {"s": xs * 1.3})
    assert not bad.ok


def test_enclosure_under_coupled_sampling_modes(corpus):
    # the intrusive frechet bounds must cover every realizable coupling
    src = corpus("sum5.ms")
    spec = parse_spec(corpus("sum5.spec"))
    intrusive = eval_program(compile_program(src, spec).ast).env
    for mode in ("independent", "perfect", "opposite"):
        mc = _quiet_mc(parse_source(src), spec, McConfig(trials=10_000, seed=6, watch=["y"], mode=mode))
        assert compare_enclosure(intrusive, mc.samples).ok, mode


def test_scalar_division_by_zero_is_runtime_error():
    with pytest.raises(UccRuntimeError):
        run("x = 1 / 0\n")


def test_frechet_five_sum_encloses_iid_ecdf():
    # no-assumption five-fold sum of U(0,1) distributions vs an iid run
    from ucc.dependence import FRECHET
    from ucc.distributions import DistSpec, make_pbox
    from ucc.interval import Interval
    from ucc.pbox import conv_add

    u = make_pbox(DistSpec("uniform", (Interval.point(0), Interval.point(1))), 200)
    total = u
    for _ in range(4):
        total = conv_add(total, u, FRECHET)
    rng = np.random.default_rng(123)
    xs = rng.random((20_000, 5)).sum(axis=1)
    assert compare_enclosure({"y": total}, {"y": xs}).ok
