"""Exit codes, report shape, and determinism of the command line."""

import json
import subprocess
import sys

import numpy as np
import pytest

from cstarkit import io, oml


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "cstarkit.cli", *argv],
        capture_output=True,
        text=True,
    )


@pytest.fixture()
def jordan_matrix(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"dim": 2, "entries": [[1, 0], [1, 0], [0, 0], [1, 0]]}))
    return str(path)


def test_decompose_single_block(jordan_matrix):
    r = run_cli("decompose", "--input", jordan_matrix)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["passed"]
    assert rep["blocks"] == [{"eigenvalue": [1.0, 0.0], "position": 0, "size": 2}]
    assert rep["reconstruction_residual"] <= rep["reconstruction_residual_tolerance"]
    assert rep["tolerances"]["eps_verify"] == 1e-8


def test_funcalc_exp(jordan_matrix):
    r = run_cli("funcalc", "--input", jordan_matrix, "--function", "exp")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    val = io.parse_matrix(rep["result"])
    e = np.e
    assert np.allclose(val, [[e, e], [0, e]], atol=1e-10)
    assert "riesz_residual_tolerance" in rep


def test_funcalc_needs_function(jordan_matrix):
    r = run_cli("funcalc", "--input", jordan_matrix)
    assert r.returncode == 2
    assert r.stdout == ""
    assert r.stderr.strip().startswith("error:")


def test_funcalc_rejects_unknown_function(jordan_matrix):
    r = run_cli("funcalc", "--input", jordan_matrix, "--function", "sqrt")
    assert r.returncode == 2
    assert len(r.stderr.strip().splitlines()) == 1


def test_invsub(jordan_matrix):
    r = run_cli("invsub", "--input", jordan_matrix)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["projection_rank"] == 1
    assert rep["invariance_residual"] <= 1e-8


def test_missing_input_file():
    r = run_cli("decompose", "--input", "/nonexistent/x.json")
    assert r.returncode == 2
    assert len(r.stderr.strip().splitlines()) == 1


def test_algebra_requires_seed(tmp_path):
    doc = tmp_path / "alg.json"
    doc.write_text(json.dumps({
        "ambient_dim": 2,
        "generators": [io.dump_matrix(np.diag([1.0, 2.0]))],
    }))
    r = run_cli("algebra", "--input", str(doc))
    assert r.returncode == 2
    r = run_cli("algebra", "--input", str(doc), "--seed", "11")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["dim"] == 2 and rep["block_dims"] == [1, 1]
    assert rep["commutative"] and rep["center_matches_blocks"]


def test_duality_roundtrip_dispatch(tmp_path):
    rel = tmp_path / "rel.json"
    rel.write_text(json.dumps({"points": ["a", "b"], "pairs": [["a", "b"]]}))
    r = run_cli("duality-roundtrip", "--input", str(rel), "--seed", "1")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["kind"] == "relation"
    assert rep["report"]["passed"]

    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps({
        "ambient_dim": 2,
        "generators": [io.dump_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))],
    }))
    r = run_cli("duality-roundtrip", "--input", str(alg), "--seed", "1")
    assert r.returncode == 0
    assert json.loads(r.stdout)["kind"] == "algebra"


def test_group_report(tmp_path):
    doc = tmp_path / "z4.json"
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    doc.write_text(json.dumps({"order": 4, "table": table, "name": "Z4"}))
    r = run_cli("group", "--input", str(doc), "--seed", "2")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["classification"] == "abelian-commutative"
    assert rep["irreps"]["dims"] == [1, 1, 1, 1]
    assert rep["double_dual"]["passed"]


def test_group_rejects_bad_table(tmp_path):
    doc = tmp_path / "bad.json"
    doc.write_text(json.dumps({"order": 2, "table": [[0, 0], [1, 1]]}))
    r = run_cli("group", "--input", str(doc), "--seed", "2")
    assert r.returncode == 2
    assert r.stdout == ""
    assert len(r.stderr.strip().splitlines()) == 1


def _lattice_doc(lat):
    return {
        "size": lat.size,
        "meet": [list(row) for row in lat.meet],
        "join": [list(row) for row in lat.join],
        "complement": list(lat.complement),
        "zero": lat.zero,
        "one": lat.one,
    }


def test_oml_pass_and_fail_exit_codes(tmp_path):
    good = tmp_path / "bool.json"
    good.write_text(json.dumps(_lattice_doc(oml.boolean_algebra(2))))
    r = run_cli("oml", "--input", str(good))
    assert r.returncode == 0
    assert json.loads(r.stdout)["stone"]["passed"]

    # pentagon fails orthomodularity: report is still written, exit is 1
    bad = tmp_path / "n5.json"
    bad.write_text(json.dumps(_lattice_doc(oml.pentagon())))
    out = tmp_path / "n5_report.json"
    r = run_cli("oml", "--input", str(bad), "--out", str(out))
    assert r.returncode == 1
    rep = json.loads(out.read_text())
    assert not rep["passed"]
    assert not rep["oml"]["orthomodular"]


def test_reports_are_byte_identical(tmp_path, jordan_matrix):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert run_cli("decompose", "--input", jordan_matrix, "--out", str(out1)).returncode == 0
    assert run_cli("decompose", "--input", jordan_matrix, "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_tolerance_flags_flow_into_report(jordan_matrix):
    r = run_cli("decompose", "--input", jordan_matrix, "--eps-verify", "1e-5")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["tolerances"]["eps_verify"] == 1e-5
    assert rep["reconstruction_residual_tolerance"] == 1e-5


def test_two_inputs_rejected(jordan_matrix):
    r = run_cli("decompose", "--input", jordan_matrix, "--input", jordan_matrix)
    assert r.returncode == 2
