from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab import cli
from twistlab.scalar import FieldSpec
from twistlab.tensor import Vector

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

BASE = {
    "field": "Q",
    "algebras": [{"name": "C2", "preset": "group", "cyclic": 2}],
    "coalgebras": [{"name": "fC2", "of": "C2", "preset": "frobenius"},
                   {"name": "gC2", "of": "C2", "preset": "grouplike"}],
    "twists": [{"name": "sign", "preset": "bicharacter", "A": "C2", "B": "C2", "values": [["-1"]]}],
}

# checks whose outcome is known: status pass, fail, or error at run time
KNOWN = {
    "pass": {"op": "algebra", "args": ["C2"]},
    "fail": {"op": "bialgebra", "args": ["fC2"]},
    "error": {"op": "special-transfer", "args": ["sign", "fC2", "fC2"]},
}


def scenario(checks, **extra):
    doc = dict(BASE, checks=checks)
    doc.update(extra)
    return doc


def run(tmp_path, doc, *flags):
    p = tmp_path / "s.json"
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return cli.main(["verify", str(p), *flags])


# -- shipped scenarios --------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["c2-c2-symmetric.json", "quantum-plane.json", "explicit-seed.json"])
def test_shipped_scenarios_exit_zero(name, capsys):
    assert cli.main(["verify", str(SCENARIOS / name)]) == 0
    assert "expectations met" in capsys.readouterr().out


def test_c2_c2_symmetric_reports_symmetric(capsys):
    assert cli.main(["verify", str(SCENARIOS / "c2-c2-symmetric.json"), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    sym = [r for r in doc["results"] if r["check"] == "twisted-symmetric"]
    assert sym and sym[0]["status"] == "pass"


def test_quantum_plane_witness_printed(capsys):
    cli.main(["verify", str(SCENARIOS / "quantum-plane.json")])
    out = capsys.readouterr().out
    assert "witness" in out and "FAIL" in out


# -- exit codes ---------------------------------------------------------------------------------

def test_expected_failure_met(tmp_path, capsys):
    assert run(tmp_path, scenario([dict(KNOWN["fail"], expect="fail")])) == 0


def test_unexpected_failure(tmp_path, capsys):
    assert run(tmp_path, scenario([dict(KNOWN["fail"], expect="pass")])) == 1
    assert run(tmp_path, scenario([KNOWN["fail"]])) == 1


def test_error_status(tmp_path, capsys):
    assert run(tmp_path, scenario([dict(KNOWN["error"], expect="error")])) == 0
    assert run(tmp_path, scenario([KNOWN["error"]])) == 1


def test_error_result_has_message(tmp_path, capsys):
    run(tmp_path, scenario([KNOWN["error"]]), "--format", "json")
    doc = json.loads(capsys.readouterr().out)
    r = doc["results"][0]
    assert r["status"] == "error" and r["error"].startswith("NotSpecialInputs")
    assert r["report"] is None and not r["met"]


def test_malformed_field_reports_position(tmp_path, capsys):
    text = '{\n  "field": "GF(4)",\n  "checks": []\n}\n'
    assert run(tmp_path, text) == 2
    err = capsys.readouterr().err
    assert "line 2, column 12" in err


def test_json_syntax_error_position(tmp_path, capsys):
    assert run(tmp_path, '{"field": "Q",\n  "checks": [}') == 2
    assert "line 2" in capsys.readouterr().err


@pytest.mark.parametrize("mutate,exc", [
    (lambda d: d["twists"].append({"name": "t", "preset": "bogus", "A": "C2", "B": "C2"}), cli.UnknownPreset),
    (lambda d: d["twists"].append({"name": "t", "preset": "trivial", "A": "C2", "B": "nope"}), cli.NameResolution),
    (lambda d: d["checks"].append({"op": "algebra", "args": ["missing"]}), cli.NameResolution),
    (lambda d: d["checks"].append({"op": "frobnicate", "args": []}), cli.UnknownPreset),
    (lambda d: d["checks"].append({"op": "algebra", "args": ["C2"], "expect": "maybe"}), cli.InputError),
    (lambda d: d["checks"].append({"op": "iterated", "args": ["sign", 0, 1]}), cli.InputError),
])
def test_input_errors(mutate, exc, tmp_path, capsys):
    doc = json.loads(json.dumps(scenario([])))
    mutate(doc)
    with pytest.raises(exc):
        cli.load_scenario(json.dumps(doc))
    assert run(tmp_path, doc) == 2


def test_inconsistent_seed_is_input_error(tmp_path, capsys):
    doc = {
        "field": "Q",
        "algebras": [{"name": "X", "preset": "truncated", "n": 3, "var": "x"},
                     {"name": "Y", "preset": "truncated", "n": 3, "var": "y"}],
        "twists": [{"name": "w", "preset": "seed-extension", "A": "X", "B": "Y",
                    "seed": [[["y", "x"], ["x", "y"], "1"], [["y", "x"], ["1", "1"], "-1"]]}],
        "checks": [{"op": "twisting", "args": ["w"]}],
    }
    assert run(tmp_path, doc) == 2
    assert "InconsistentExtension" in capsys.readouterr().err


def test_dimension_cap_is_input_error(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TWISTLAB_MAX_DIM", "8")
    assert run(tmp_path, scenario([{"op": "twisting", "args": ["sign"]}])) == 2
    assert "TWISTLAB_MAX_DIM" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert cli.main(["verify", str(tmp_path / "absent.json")]) == 2


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(sorted(KNOWN)), st.sampled_from([None, "pass", "fail", "error"])),
                min_size=0, max_size=5))
def test_exit_code_contract(items):
    checks = []
    for status, expect in items:
        c = dict(KNOWN[status])
        if expect is not None:
            c["expect"] = expect
        checks.append(c)
    sc = cli.load_scenario(json.dumps(scenario(checks)))
    results = cli.run_scenario(sc)
    assert [r.status for r in results] == [s for s, _ in items]
    met = all((s == "pass") if e is None else (s == e) for s, e in items)
    assert cli.exit_code(results) == (0 if met else 1)


# -- reports ----------------------------------------------------------------------------------------

def test_json_is_deterministic(tmp_path, capsys):
    path = SCENARIOS / "quantum-plane.json"
    outs = []
    for flags in ([], [], ["--parallel"]):
        assert cli.main(["verify", str(path), "--format", "json", *flags]) == 0
        outs.append(capsys.readouterr().out.encode())
    assert outs[0] == outs[1] == outs[2]
    doc = json.loads(outs[0])
    assert doc["schema"] == 1 and doc["exit_code"] == 0
    assert list(doc) == sorted(doc)


def test_timings_only_on_request(tmp_path, capsys):
    path = SCENARIOS / "c2-c2-symmetric.json"
    cli.main(["verify", str(path), "--format", "json"])
    assert "elapsed" not in capsys.readouterr().out
    cli.main(["verify", str(path), "--format", "json", "--timings"])
    doc = json.loads(capsys.readouterr().out)
    assert all(isinstance(r["elapsed"], float) for r in doc["results"])


def test_parallel_preserves_order(tmp_path, capsys):
    items = ["pass", "fail", "error", "pass", "fail", "pass"]
    sc = cli.load_scenario(json.dumps(scenario([dict(KNOWN[s], expect=s) for s in items])))
    assert [r.status for r in cli.run_scenario(sc, parallel=True)] == items


def test_witness_round_trips(capsys):
    cli.main(["verify", str(SCENARIOS / "quantum-plane.json"), "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    bi = next(r for r in doc["results"] if r["check"] == "twisted-bialgebra")
    w = bi["witness"]
    assert w is not None and w["lhs"] != w["rhs"]
    # rebuild both images from the JSON and re-evaluate the failing square directly
    sc = cli.load_scenario((SCENARIOS / "quantum-plane.json").read_text())
    rep = cli.run_scenario(sc)[1].report
    check = next(c for c in rep.checks if not c.ok and c.witness is not None)
    F = FieldSpec.parse("Q")
    space = check.witness.lhs.space
    lhs = Vector.from_terms(space, {tuple(lab): F.parse_scalar(c) for lab, c in w["lhs"]})
    rhs = Vector.from_terms(space, {tuple(lab): F.parse_scalar(c) for lab, c in w["rhs"]})
    assert lhs == check.witness.lhs and rhs == check.witness.rhs
    assert tuple(w["label"]) == check.witness.label


def test_citations_on_every_result(capsys):
    cli.main(["verify", str(SCENARIOS / "c2-c2-symmetric.json"), "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert all(r["citation"] for r in doc["results"])
    assert all(r["report"]["citation"] for r in doc["results"] if r["report"])


def test_empty_report():
    doc = cli.results_document([])
    assert doc == {"schema": 1, "source": "", "results": [], "exit_code": 0}
    assert json.loads(cli.emit_json(doc)) == doc
    assert cli.emit_text([]) == "no checks\n"


def test_text_table_alignment(capsys):
    cli.main(["verify", str(SCENARIOS / "c2-c2-symmetric.json")])
    lines = capsys.readouterr().out.splitlines()
    header = lines[0]
    col = header.index("CHECK")
    rows = [ln for ln in lines[1:] if ln[:1] != " " and "expectations met" not in ln]
    assert rows and all(ln[col - 2:col] == "  " for ln in rows)


# -- demos ---------------------------------------------------------------------------------------

def test_list_demos(capsys):
    assert cli.main(["list-demos"]) == 0
    out = capsys.readouterr().out
    for name in ("jordan", "weyl", "qci", "c2-c2-symmetric", "skew-group", "quantum-plane"):
        assert name in out


def test_demo_jordan(capsys):
    assert cli.main(["demo", "jordan"]) == 0
    out = capsys.readouterr().out
    assert "hexagon paths differ at y⊗x" in out
    assert "x^2⊗1⊗1⊗1" in out


def test_demo_qci_symmetric(capsys):
    assert cli.main(["demo", "qci", "--n", "2", "--m", "3,3", "--q-order", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["status"] for r in doc["results"]] == ["pass", "pass"]


def test_demo_qci_order_four(capsys):
    assert cli.main(["demo", "qci", "--q-order", "4"]) == 0
    assert "FAIL" in capsys.readouterr().out.upper()


@pytest.mark.parametrize("argv", [["demo", "nope"], ["demo", "qci", "--bogus", "1"], ["demo", "qci", "--n", "x"],
                                  ["demo", "qci", "--q-order", "5", "--field", "Q"]])
def test_demo_input_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "twistlab.cli", "verify", str(SCENARIOS / "c2-c2-symmetric.json")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "expectations met" in out.stdout
