import io
import json
from pathlib import Path

import jsonschema
import pytest

from walkercurv.cli import load_schema, main

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    report = json.loads(out) if out else None
    if report is not None:
        jsonschema.validate(report, load_schema())
    return code, report, err


def problem(name):
    return str(PROBLEMS / name)


def test_analyze_general():
    code, report, _ = run_json("analyze", "-i", problem("general.txt"))
    assert code == 0 and report["exit_code"] == 0
    assert report["tensors"]["connection"]["count"] == 14
    assert report["tensors"]["curvature"]["count"] == 11
    assert report["input"]["sha256"]


def test_analyze_restricted_tau_zero():
    code, report, _ = run_json("analyze", "-i", problem("restricted.txt"))
    assert code == 0
    # zero components are omitted, so tau = 0 shows as an empty section
    assert report["tensors"]["scalar_curvature"]["count"] == 0
    assert report["tensors"]["einstein_tensor"]["count"] == 3


def test_analyze_flat_text():
    code, out, _ = run("analyze", "-i", problem("flat.txt"))
    assert code == 0
    assert "lam^4" in out


def test_classify_example():
    code, report, _ = run_json("classify", "-i", problem("einstein_example.txt"))
    assert code == 0
    verdicts = report["classification"]["verdicts"]
    assert [v["class"] for v in verdicts] == ["E", "P", "A", "B", "C"]
    assert all(v["status"] == "holds off singular set" for v in verdicts)
    assert report["classification"]["singular_locus"] == "x3 + x4 - 4 = 0"


def test_classify_linear_bc():
    code, report, _ = run_json("classify", "-i", problem("linear_bc.txt"), "--classes", "P,C")
    assert code == 0
    verdicts = {v["class"]: v for v in report["classification"]["verdicts"]}
    assert set(verdicts) == {"P", "C"}
    assert verdicts["P"]["status"] == "fails" and verdicts["C"]["status"] == "holds"


def test_classify_paper_diff():
    code, report, _ = run_json("classify", "-i", problem("restricted.txt"), "--paper-diff")
    assert code == 0
    diffs = report["classification"]["paper_diff"]
    a = {m["generator"]: m["match"] for m in diffs["A"]["derived"]}
    assert a == {"A1": "rational multiple", "A2": "unmatched", "A3": "unmatched", "A4": "exact match"}


def test_classify_bad_class():
    code, _, err = run("classify", "-i", problem("restricted.txt"), "--classes", "Z")
    assert code == 2 and "--classes" in err


def test_missing_file():
    code, _, err = run("analyze", "-i", "/nonexistent/problem.txt")
    assert code == 2 and err


def test_parse_error_position(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("func a(x1,x2,x3,x4) = x1 + \n")
    code, _, err = run("analyze", "-i", str(bad))
    assert code == 2
    assert "line 1, col" in err


def test_geodesic_flat(tmp_path):
    csv_path = tmp_path / "t.csv"
    code, report, _ = run_json(
        "geodesic", "-i", problem("flat.txt"), "--x0", "0,0,0,0", "--v0", "1,2,3,4", "-o", str(csv_path)
    )
    assert code == 0
    g = report["geodesic"]
    assert g["steps"] == 1000
    assert g["energy_initial"] == 22.0
    assert csv_path.read_text().startswith("t,x1,x2,x3,x4,v1,v2,v3,v4,energy")


def test_geodesic_divergence_exit_4():
    code, report, err = run_json(
        "geodesic", "-i", problem("einstein_example.txt"), "--x0", "0,0,0,0", "--v0", "0,0,1,1", "--t", "2"
    )
    assert code == 4 and report["exit_code"] == 4
    error = report["geodesic"]["error"]
    assert error["kind"] == "divergence"
    assert error["last_state"]["t"] > 0.9


def test_geodesic_pole_exit_4():
    code, report, _ = run_json(
        "geodesic", "-i", problem("einstein_example.txt"), "--x0", "0,0,3.9,0", "--v0", "0,0,0,1"
    )
    assert code == 4
    assert "x3 + x4 - 4" in report["message"]


def test_geodesic_needs_concrete_input():
    code, _, err = run("geodesic", "-i", problem("restricted.txt"), "--x0", "0,0,0,0", "--v0", "1,0,0,0")
    assert code == 2


def test_geodesic_bad_vector():
    with pytest.raises(SystemExit) as info:
        run("geodesic", "-i", problem("flat.txt"), "--x0", "0,0", "--v0", "1,0,0,0")
    assert info.value.code == 2


def test_deterministic_output():
    a = run("classify", "-i", problem("restricted.txt"), "--json", "--paper-diff")
    b = run("classify", "-i", problem("restricted.txt"), "--json", "--paper-diff")
    assert a[1].encode() == b[1].encode()


@pytest.fixture(scope="module")
def verify_report():
    return run_json("verify")


def test_verify_passes(verify_report):
    code, report, _ = verify_report
    assert code == 0
    checks = report["concordance"]["checks"]
    assert all(c["passed"] for c in checks if c["must"])
    assert not next(c for c in checks if c["name"] == "covariant derivative of Ricci")["passed"]


@pytest.mark.slow
def test_verify_strict_fails():
    code, report, _ = run_json("verify", "--strict")
    assert code == 3 and report["exit_code"] == 3
