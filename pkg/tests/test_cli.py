import json
import pathlib

import pytest

from ucc.cli import main

CORPUS = pathlib.Path(__file__).parent / "corpus"


def test_compile_to_stdout(capsys):
    rc = main(["compile", str(CORPUS / "product_copy.ms"), "--spec", str(CORPUS / "product_copy.spec")])
    out = capsys.readouterr()
    assert rc == 0
    assert "a = interval(3.555, 3.565)" in out.out
    assert "d = add(mul(a, b, 'f'), c, 'f')" in out.out


def test_compile_to_file(tmp_path, capsys):
    target = tmp_path / "enriched.ms"
    rc = main([
        "compile", str(CORPUS / "product_copy.ms"),
        "--spec", str(CORPUS / "product_copy.spec"),
        "--out", str(target),
    ])
    assert rc == 0
    assert "interval(3.555, 3.565)" in target.read_text()


def test_auto_mode(capsys):
    rc = main(["auto", str(CORPUS / "area_auto.ms")])
    out = capsys.readouterr().out
    assert rc == 0
    assert "radius = interval(2.45, 2.55)" in out
    assert "pi" in out and "interval(3.1" not in out


def test_missing_file_is_usage_error(capsys):
    rc = main(["compile", "no_such_file.ms"])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_usage_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["compile"])  # missing program argument
    assert exc.value.code == 2


def test_run_exports_json(capsys):
    rc = main(["run", str(CORPUS / "product_copy.ms"), "--spec", str(CORPUS / "product_copy.spec")])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out[out.index("{"):])
    assert doc["vars"]["d"]["kind"] == "interval"
    assert doc["vars"]["d"]["lo"] < 11.8904 < doc["vars"]["d"]["hi"]


def test_compile_then_run_matches_inprocess(tmp_path, capsys):
    enriched = tmp_path / "enriched.ms"
    assert main([
        "compile", str(CORPUS / "product_copy.ms"),
        "--spec", str(CORPUS / "product_copy.spec"),
        "--out", str(enriched),
    ]) == 0
    capsys.readouterr()
    assert main(["run", str(enriched)]) == 0
    from_file = capsys.readouterr().out
    assert main(["run", str(CORPUS / "product_copy.ms"), "--spec", str(CORPUS / "product_copy.spec")]) == 0
    in_process = capsys.readouterr().out
    doc_a = json.loads(from_file[from_file.index("{"):])
    doc_b = json.loads(in_process[in_process.index("{"):])
    assert doc_a["vars"] == doc_b["vars"]


def test_check_deps_feasible(tmp_path, capsys):
    spec = tmp_path / "ok.spec"
    spec.write_text("dependence a, b: independent\n")
    assert main(["check-deps", str(spec)]) == 0
    assert "feasible" in capsys.readouterr().out


def test_check_deps_infeasible(tmp_path, capsys):
    spec = tmp_path / "bad.spec"
    spec.write_text(
        "dependence x, y: independent\n"
        "dependence x, z: perfect\n"
        "dependence y, z: opposite\n"
    )
    assert main(["check-deps", str(spec)]) == 1
    assert "INFEASIBLE" in capsys.readouterr().out


def test_mc_command(tmp_path, capsys):
    hist = tmp_path / "hist.csv"
    rc = main([
        "mc", str(CORPUS / "sum5.ms"), "--spec", str(CORPUS / "sum5.spec"),
        "--trials", "2000", "--seed", "9", "--event", "y >= 4.5",
        "--watch", "y", "--hist-csv", str(hist),
    ])
    out = capsys.readouterr()
    assert rc == 0
    assert "Pr(y >= 4.5)" in out.out
    assert "warning:" in out.err  # the uniform-sampling assumption is loud
    assert hist.read_text().startswith("bin_lo,bin_hi,count")


def test_repeats_command(tmp_path, capsys):
    prog = tmp_path / "p.ms"
    prog.write_text("d = a * b + a * c\n")
    assert main(["repeats", str(prog)]) == 0
    assert "a appears x2" in capsys.readouterr().out


def test_run_with_dunno_policy(tmp_path, capsys):
    assert main([
        "run", str(CORPUS / "control_flow.ms"),
        "--spec", str(CORPUS / "control_flow.spec"),
        "--dunno", "sometimes",
    ]) == 0
    capsys.readouterr()
    rc = main([
        "run", str(CORPUS / "control_flow.ms"),
        "--spec", str(CORPUS / "control_flow.spec"),
        "--dunno", "error",
    ])
    assert rc == 1
    assert "DUNNO" in capsys.readouterr().err


def test_strict_sqrt_flag(tmp_path, capsys):
    from ucc.interval import set_sqrt_policy

    prog = tmp_path / "s.ms"
    prog.write_text("a = 0.0\nr = sqrt(a)\n")
    spec = tmp_path / "s.spec"
    spec.write_text("a: [-1, 1]\n")
    try:
        assert main(["run", str(prog), "--spec", str(spec)]) == 0
        capsys.readouterr()
        rc = main(["run", str(prog), "--spec", str(spec), "--strict-sqrt"])
        assert rc == 1
        assert "sqrt" in capsys.readouterr().err
    finally:
        set_sqrt_policy(strict=False)


def test_run_steps_flag(tmp_path, capsys):
    prog = tmp_path / "p.ms"
    prog.write_text("u = uniform(0, 1)\n")
    assert main(["run", str(prog), "--spec", "/dev/null", "--steps", "40"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out[out.index("{"):])
    assert doc["vars"]["u"]["steps"] == 40


def test_run_rejects_degenerate_steps(tmp_path, capsys):
    prog = tmp_path / "p.ms"
    prog.write_text("a = 1\n")
    rc = main(["run", str(prog), "--steps", "1"])
    assert rc == 2
    assert "--steps" in capsys.readouterr().err
