import json
import subprocess
import sys

import pytest

from evokit import cli, randgen


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_analyze_rank_one_example(capsys, golden):
    code, rep = run_json(capsys, "analyze", golden / "rotation_algebra.json")
    assert code == 0
    assert rep["rank"]["value"] == 1
    assert rep["2li"]["value"] is False
    assert rep["degenerate"]["value"] is False
    assert rep["operator_set"]["verdict"] == "SemitrivialNotTrivial"
    for key in ("degenerate", "rank", "2li", "unique_natural_basis", "operator_set", "symmetric_group_in_aut"):
        assert rep[key]["source"]


def test_analyze_identity(capsys, golden):
    code, rep = run_json(capsys, "analyze", golden / "identity3_algebra.json")
    assert code == 0
    assert rep["2li"]["value"] is True
    assert rep["operator_set"]["verdict"] == "Trivial"


def test_analyze_json_is_byte_identical_and_round_trips(capsys, golden):
    _, first, _ = run(capsys, "analyze", golden / "proportional_algebra.json", "--json")
    _, second, _ = run(capsys, "analyze", golden / "proportional_algebra.json", "--json")
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first


def test_malformed_scalar_exits_2(capsys, golden):
    code, _, err = run(capsys, "analyze", golden / "malformed_algebra.json")
    assert code == 2
    assert "offset 2" in err and "(1,1)" in err


def test_input_errors_exit_2(capsys, tmp_path, golden):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"kind": "rational"},\n "matrix": [[1, 2]')
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 2" in err
    ragged = tmp_path / "ragged.json"
    ragged.write_text(json.dumps({"field": {"kind": "rational"}, "matrix": [["1", "2"]]}))
    assert run(capsys, "analyze", ragged)[0] == 2
    assert run(capsys, "analyze", tmp_path / "missing.json")[0] == 2
    # dimension mismatch between algebra and matrix
    code, _, _ = run(capsys, "check-morphism", golden / "reflection_algebra.json", golden / "proportional_G.json")
    assert code == 2


def test_check_morphism(capsys, golden):
    code, v = run_json(capsys, "check-morphism", golden / "cube_root_swap_algebra.json", golden / "cube_root_swap_G.json")
    assert code == 0 and v["is_automorphism"] is True
    code, v = run_json(capsys, "check-morphism", golden / "proportional_algebra.json", golden / "proportional_G.json")
    assert v["is_natural_basis"] is True and v["is_automorphism"] is False


def test_check_morphism_names_failed_condition(capsys, tmp_path):
    A = tmp_path / "a.json"
    G = tmp_path / "g.json"
    A.write_text(json.dumps({"field": {"kind": "rational"}, "matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}))
    G.write_text(json.dumps({"matrix": [["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]}))
    code, out, _ = run(capsys, "check-morphism", A, G)
    assert code == 0
    assert "StarConditionFailed at columns (1,3)" in out


def test_change_basis(capsys, golden):
    code, rep = run_json(capsys, "change-basis", golden / "proportional_algebra.json", golden / "proportional_G.json")
    assert code == 0
    assert rep["old_basis"] == [["0", "2"], ["0", "4"]]
    assert rep["same_map"] is False
    assert rep["lambda"] == ["0", "2"]
    code, rep = run_json(capsys, "change-basis", golden / "degenerate_algebra.json", golden / "degenerate_G.json")
    assert rep["old_basis"] == [["3", "0"], ["6", "0"]]


def test_change_basis_rejects_non_natural(capsys, golden):
    code, _, err = run(capsys, "change-basis", golden / "identity3_algebra.json", golden / "reflection_G.json")
    assert code == 2


def test_orbit(capsys, golden):
    code, rep = run_json(capsys, "orbit", golden / "reflection_algebra.json", golden / "reflection_G.json")
    assert code == 0
    assert rep["status"] == "Finite" and rep["period"] == 2 and len(rep["orbit"]) == 2
    code, rep = run_json(capsys, "orbit", golden / "rotation_algebra.json", golden / "rotation_G.json", "--max-steps", 50)
    assert rep["status"] == "InfiniteCertified"
    assert rep["certificate"]["eigenvalue"] == "1/3 + 2/3*i*r"
    code, _, _ = run(capsys, "orbit", golden / "proportional_algebra.json", golden / "proportional_G.json")
    assert code == 2


def test_classify(capsys, golden):
    code, rep = run_json(capsys, "classify", golden / "degenerate_algebra.json", "--budget", 20, "--seed", 1)
    assert code == 0 and rep["verdict"] == "SemitrivialUndecided"
    code, rep = run_json(capsys, "classify", golden / "proportional_algebra.json")
    assert rep["verdict"] == "SemitrivialNotTrivial"
    assert rep["witness"]["lambda"][rep["witness"]["zero_column"] - 1] == "0"


def test_fuzz_exit_codes(capsys, monkeypatch):
    code, rep = run_json(capsys, "fuzz", "--seed", 2, "--count", 5)
    assert code == 0 and rep["passed"] == 5

    def broken(E, p, rng, report):
        raise randgen._Fail("semitriviality", "forced failure")

    monkeypatch.setattr(randgen, "_check_instance", broken)
    code, rep = run_json(capsys, "fuzz", "--seed", 2, "--count", 3)
    assert code == 1
    assert rep["counterexample"]["property"] == "semitriviality"
    assert rep["counterexample"]["index"] == 0


def test_fuzz_regression_gate():
    proc = subprocess.run(
        [sys.executable, "-m", "evokit.cli", "fuzz", "--seed", "1", "--count", "100"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "100/100 instances passed" in proc.stdout


def test_human_output(capsys, golden):
    code, out, _ = run(capsys, "analyze", golden / "sym_group_algebra.json", "--budget", 5)
    assert code == 0 and "S_n in Aut(E):         True" in out
