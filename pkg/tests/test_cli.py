import json
import subprocess
import sys
from pathlib import Path

import pytest

from atomspec.cli import EXIT_GUARD, EXIT_OK, EXIT_PARSE, EXIT_REJECTED, run

DATA = Path(__file__).parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_rejects_non_admissible_with_position(capsys):
    code, out, err = call(capsys, "check", DATA / "jordan_bad.q")
    assert code == EXIT_REJECTED
    assert "jordan_bad.q:3:16" in err and "'2*e_1'" in err and "not admissible" in err


def test_check_reports_verdict(capsys):
    code, out, _ = call(capsys, "check", DATA / "jordan_cube.q", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["right_rooted"] == "Yes"
    assert data["relations"] == [{"relation": "X^3", "position": "3:11", "admissible": True}]
    code, out, _ = call(capsys, "check", DATA / "jordan_free.q")
    assert code == EXIT_OK and "right rooted: No" in out


def test_spectrum_matches_golden(capsys):
    code, out, _ = call(capsys, "spectrum", DATA / "subspace2.q")
    assert code == EXIT_OK
    assert out == (DATA / "subspace2.golden.json").read_text()
    assert len(json.loads(out)["points"]) == 2


def test_spectrum_rejects_non_admissible(capsys):
    code, _, err = call(capsys, "spectrum", DATA / "jordan_bad.q")
    assert code == EXIT_REJECTED and "3:16" in err


def test_spectrum_dot_and_primes(capsys):
    code, out, _ = call(capsys, "spectrum", DATA / "jordan_cube.q", "--format", "dot", "--primes", "3,2")
    assert code == EXIT_OK
    assert '"v1_p0" -> "v1_p2";' in out and '"v1_p0" -> "v1_p3";' in out and "v1_p5" not in out


def test_spectrum_warns_on_embedding(capsys):
    code, out, err = call(capsys, "spectrum", DATA / "jordan_free.q")
    assert code == EXIT_OK and json.loads(out)["status"] == "embedding_only"


def test_ideal_listing(capsys):
    code, out, _ = call(capsys, "ideal", DATA / "jordan_cube.q", "--vertex", "1", "--prime", "2", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["generators"] == ["X", "2*e_1"]
    code, _, err = call(capsys, "ideal", DATA / "jordan_cube.q", "--vertex", "1", "--prime", "4")
    assert code == EXIT_REJECTED


def test_verify_reports_witness(capsys):
    code, out, _ = call(capsys, "verify", DATA / "jordan_free.q", "--dim-bound", "1")
    assert code == EXIT_OK
    report = json.loads(out)
    (check,) = [c for c in report["checks"] if c["name"] == "non_surjectivity_witnesses"]
    assert check["witnesses"] == [{"dims": {"1": 1}, "mats": {"X": [[1]]}, "kernel_zero": True}]


def test_verify_guard_exit(capsys):
    code, _, err = call(capsys, "verify", DATA / "subspace2.q", "--dim-bound", "9", "--guard-tuples", "100")
    assert code == EXIT_GUARD and "exceeds" in err


def test_verify_needs_field(capsys):
    code, _, err = call(capsys, "verify", DATA / "jordan_cube.q")
    assert code == EXIT_REJECTED
    code, out, _ = call(capsys, "verify", DATA / "jordan_cube.q", "--oracle-prime", "2", "--dim-bound", "2")
    assert code == EXIT_OK and json.loads(out)["right_rooted"] == "Yes"


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.q"
    bad.write_text("vertices 1;\narrows x: 1 -> 2;\nring Z;\n")
    code, _, err = call(capsys, "spectrum", bad)
    assert code == EXIT_PARSE and "2:16" in err


def test_bad_flags_are_rejections(capsys):
    with pytest.raises(SystemExit) as info:
        run(["spectrum", str(DATA / "subspace2.q"), "--degree-bound", "0"])
    assert info.value.code == EXIT_REJECTED


def test_triangular_command(capsys):
    code, out, _ = call(capsys, "triangular", DATA / "bimodule_f2.json", "--ring-a", "F2", "--ring-b", "F2")
    assert code == EXIT_OK
    assert [p["label"] for p in json.loads(out)["points"]] == ["<T/[[(0),0],[F2,F2]]>", "<T/[[F2,0],[F2,(0)]]>"]


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "s.json"
    code, out, _ = call(capsys, "spectrum", DATA / "subspace2.q", "--out", target)
    assert code == EXIT_OK and out == ""
    assert target.read_text() == (DATA / "subspace2.golden.json").read_text()


def test_byte_identical_runs():
    cmd = [sys.executable, "-m", "atomspec.cli", "spectrum", str(DATA / "jordan_cube.q"), "--format", "dot"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
