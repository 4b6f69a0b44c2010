from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from stratamalg.cli import BAD_INPUT, NEGATIVE, OK, main
from stratamalg.dsl import parse

FIX = Path(__file__).parent.parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", sorted(FIX.glob("*.strat")), ids=lambda p: p.stem)
def test_fixtures_validate(capsys, path):
    code, out, err = run(capsys, "validate", path)
    assert code == OK, err
    assert out.strip().endswith("ok")


def test_graph_dot_golden(capsys):
    code, out, _ = run(capsys, "graph", FIX / "eight_curve.strat", "--dot")
    assert code == OK
    assert out == (GOLDEN / "eight_curve.dot").read_text()


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", FIX / "figure1.strat", "--space", "R2_3", "--json")
    assert code == OK
    data = json.loads(out)
    assert len(data["edges"]) == 4


def test_classify_and_require(capsys):
    f = FIX / "figure1.strat"
    code, out, _ = run(capsys, "classify", f, "--morphism", "gamma1_in_R2_3", "--require", "STRONG_EMBEDDING")
    assert code == OK and "STRONG_EMBEDDING" in out
    code, out, _ = run(capsys, "classify", f, "--morphism", "gamma0_in_R2_1", "--require", "STRONG_EMBEDDING")
    assert code == NEGATIVE
    code, out, _ = run(capsys, "classify", f, "--morphism", "gamma0_in_R2_1", "--json")
    assert json.loads(out)["class"] == "EMBEDDING"


def test_amalgamate_eight(capsys):
    code, out, err = run(capsys, "amalgamate", FIX / "eight_curve.strat", "--verify")
    assert code == OK, err
    assert "universal property: PASS" in err
    assert "graph join: true" in err
    s = parse(out).skeleton("amalgam")
    assert len(s) == 3


def test_bouquet_default(capsys):
    code, out, _ = run(capsys, "bouquet", "-k", "3")
    assert code == OK
    assert len(parse(out).skeleton("bouquet")) == 7


def test_decompose_replay(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    code, out, _ = run(capsys, "decompose", FIX / "open_book.strat", "--plan", plan)
    assert code == OK and "step: pushout" in out
    code, out, _ = run(capsys, "replay", plan, "--name", "book")
    assert code == OK
    book = parse((FIX / "open_book.strat").read_text()).skeleton("book")
    assert parse(out).skeleton("book") == book


def test_pseudo_commands(capsys):
    code, out, _ = run(capsys, "pseudo-validate", FIX / "open_book.strat")
    assert code == OK
    code, out, err = run(capsys, "pseudo-amalgamate", FIX / "remark_counterexample.strat")
    assert code == NEGATIVE
    assert out == ""
    assert "NonClosedGluing: the glued part is not closed in W" in err
    code, out, err = run(capsys, "pseudo-amalgamate", FIX / "remark_closed.strat")
    assert code == OK, err
    assert "space amalgam" in out


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "--tower", "sphere", "--steps", "5")
    data = json.loads(out)
    assert code == OK and data["verdict"] == "GRAPH_STABLE" and data["stabilization_index"] == 1
    code, out, _ = run(capsys, "limit", "--tower", "cone", "--extrapolate")
    assert json.loads(out)["verdict"] == "LENGTH_UNBOUNDED"
    code, out, _ = run(capsys, "limit", "--tower", "spheres", "--file", FIX / "sphere_tower.strat")
    assert code == OK


def test_fraisse(capsys):
    code, out, _ = run(capsys, "fraisse-check", "--seed", "1", "--iters", "10")
    assert code == OK
    assert [a["axiom"] for a in json.loads(out)] == ["heritability", "joint_embedding", "amalgamation"]
    code, out, _ = run(capsys, "fraisse-check", "--seed", "1", "--iters", "20", "--inject-label-conflict")
    assert code == NEGATIVE


def test_bad_input(tmp_path, capsys):
    code, _, err = run(capsys, "graph", tmp_path / "missing.strat")
    assert code == BAD_INPUT and "stratamalg:" in err
    bad = tmp_path / "bad.strat"
    bad.write_text("space s {\n  stratum a dim x\n}\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == BAD_INPUT and "2:17" in err
    code, _, err = run(capsys, "graph", FIX / "figure1.strat", "--space", "nope")
    assert code == BAD_INPUT
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_negative_validate(tmp_path, capsys):
    bad = tmp_path / "cyc.strat"
    bad.write_text("space s {\n  stratum a dim 0\n  stratum b dim 1\n  order a < b\n  order b < a\n}\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == NEGATIVE
    assert "antisymmetry(a,b)" in err


def test_console_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "stratamalg.cli", "graph", str(FIX / "eight_curve.strat")],
        capture_output=True, text=True,
    )
    assert r.returncode == 0
    assert r.stdout == (GOLDEN / "eight_curve.dot").read_text()
