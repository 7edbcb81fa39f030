import json
import os
import subprocess
import sys

import pytest

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(*argv):
    proc = subprocess.run([sys.executable, "-m", "linkdyn.cli", *argv],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def path(name):
    return os.path.join(DATA, name)


def test_parse_ok_and_deterministic():
    code1, out1, _ = run("parse", path("double_a2.dd"))
    code2, out2, _ = run("parse", path("double_a2.dd"))
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical stdout across runs
    rep = json.loads(out1)
    assert rep["schema"] == "linkdyn/1"
    assert rep["payload"]["theta"] == 4
    assert [c["type"] for c in rep["payload"]["components"]] == ["A2", "A2"]


def test_parse_dot_flag():
    code, out, _ = run("parse", "--dot", path("double_a2.dd"))
    assert code == 0
    assert "style=dashed" in json.loads(out)["payload"]["dot"]


def test_parse_error_exit_2():
    code, out, err = run("parse", path("missing-file.dd"))
    assert code == 2
    code, _, _ = run("decide", path("b2_selflink.dd"))
    assert code == 2  # self-links route to the selflink machinery


def test_decide_circle3_exit_3_with_cd3():
    code, out, _ = run("decide", "--mode", "finite", path("circle3xa3.dd"))
    assert code == 3
    rep = json.loads(out)
    assert rep["status"] == "not-exists"
    assert any(r["code"] == "CD3" for r in rep["payload"]["reasons"])


def test_decide_circle4_exists():
    code, out, _ = run("decide", "--mode", "finite", path("circle4xa3.dd"))
    assert code == 0


def test_cycles_report():
    code, out, _ = run("cycles", path("circle2xb3.dd"))
    assert code == 0
    rep = json.loads(out)
    assert rep["payload"]["genus_gcd"] == 3
    (c,) = rep["payload"]["cycles"]
    assert c["genus_finite"] == 3 and c["l"] == 2 and c["w2"] == 2


def test_construct_and_verify_round_trip(tmp_path):
    code, out, _ = run("construct", path("circle2xb3.dd"))
    assert code == 0
    rep = json.loads(out)
    assert rep["payload"]["verified"] is True
    mfile = tmp_path / "matrix.json"
    mfile.write_text(json.dumps(rep["payload"]["matrix"]))
    code, out, _ = run("verify", path("circle2xb3.dd"), str(mfile))
    assert code == 0
    assert json.loads(out)["payload"]["ok"] is True


def test_verify_flags_broken_matrix(tmp_path):
    code, out, _ = run("construct", path("circle2xb3.dd"))
    matrix = json.loads(out)["payload"]["matrix"]
    matrix["entries"][0][1]["q"] += 1
    mfile = tmp_path / "bad.json"
    mfile.write_text(json.dumps(matrix))
    code, out, _ = run("verify", path("circle2xb3.dd"), str(mfile))
    assert code == 3
    assert json.loads(out)["payload"]["violations"]


def test_realize_a4a1_at_5_and_7():
    code, out, _ = run("realize", "--prime", "5", path("a4a1.dd"))
    assert code == 0
    rep = json.loads(out)
    assert rep["payload"]["E"][0] == [1, 4, 1, 2, 4]
    code, _, err = run("realize", "--prime", "7", path("a4a1.dd"))
    assert code == 2  # only p = 5 supports the 5-vertex special case


def test_realize_negative_at_bad_prime():
    code, out, _ = run("realize", "--prime", "7", path("a2b2.dd"))
    assert code == 3
    assert json.loads(out)["payload"]["realizable"] is False
    code, out, _ = run("realize", "--prime", "13", path("a2b2.dd"))
    assert code == 0


def test_dim_command():
    code, out, _ = run("dim", path("double_a2.dd"), "--group-order", "25", "--N", "5")
    assert code == 0
    assert json.loads(out)["payload"]["dimension"] == 25 * 5**6


def test_affine_excluded_pair():
    code, out, _ = run("decide", "--mode", "affine", path("affine_pair.dd"))
    assert code == 0
    assert json.loads(out)["payload"]["excluded_case"] == "A1affA1aff"
    code, out, _ = run("construct", "--mode", "affine", path("affine_pair.dd"))
    assert code == 0
    assert json.loads(out)["payload"]["verified"] is True


def test_selflink_certificates():
    code, out, _ = run("selflink", "--type", "A2", "--check", "confluence")
    assert code == 0 and json.loads(out)["payload"]["ok"] is True
    code, out, _ = run("selflink", "--type", "A2", "--check", "basis")
    assert code == 0 and json.loads(out)["payload"]["count"] == 243
    code, out, _ = run("selflink", "--type", "B2", "--check", "central",
                       "--set", "lam12=2", "--set", "lam21=3")
    assert code == 0 and json.loads(out)["payload"]["ok"] is True
