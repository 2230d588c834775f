import json

import pytest

from pvifold.catalog.entries import fixture_text
from pvifold.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def perturbed(tmp_path):
    """boalch-31 with one coefficient of y changed."""
    text = fixture_text("boalch-31")
    bad = text.replace("+ 9/4*s^4", "+ 7/4*s^4", 1)
    assert bad != text
    path = tmp_path / "perturbed.txt"
    path.write_text(bad)
    return path


def test_verify_entries_text(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "boalch-31", "--entry", "hitchin-dihedral")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "2/2 passed"
    assert out.startswith("PASS boalch-31")


def test_verify_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "boalch-39", "--format", "json-lines")
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0]["entry"] == "boalch-39" and records[0]["status"] == "PASS"
    assert records[-1] == {"summary": {"passed": 1, "total": 1}}


def test_verify_numeric_mode(capsys):
    code, out, _ = run(capsys, "verify", "--entry", "boalch-32", "--mode", "numeric", "--samples", "5",
                       "--precision", "40")
    assert code == EXIT_OK and "path=numeric" in out


def test_verify_chain(capsys):
    code, out, _ = run(capsys, "verify", "--chain")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "12/12 passed"


def test_perturbed_fixture_fails(capsys, perturbed):
    code, out, _ = run(capsys, "verify", "--fixture", str(perturbed))
    assert code == EXIT_FAIL and out.startswith("FAIL")
    code, _, _ = run(capsys, "residual", str(perturbed))
    assert code == EXIT_FAIL


def test_malformed_fixture_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("id: x\ntheta: 1/2 1/2 1/2 1/2\nbase: s\nt: s\ny: 0.5*s\n")
    code, _, err = run(capsys, "verify", "--fixture", str(path))
    assert code == EXIT_USAGE and "malformed fixture" in err
    code, _, _ = run(capsys, "verify", "--fixture", str(tmp_path / "missing.txt"))
    assert code == EXIT_USAGE


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--entry", "boalch-99")[0] == EXIT_USAGE
    assert run(capsys, "verify")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--entry", "boalch-31", "--precision", "0")[0] == EXIT_USAGE
    assert run(capsys, "nosuchcommand")[0] == EXIT_USAGE
    assert run(capsys, "transform", "--entry", "boalch-31", "--pipeline", "okamoto[1,2]")[0] == EXIT_USAGE


def test_precision_environment(capsys, monkeypatch):
    monkeypatch.setenv("PVIFOLD_PRECISION", "ten")
    assert run(capsys, "verify", "--entry", "boalch-31")[0] == EXIT_USAGE
    monkeypatch.setenv("PVIFOLD_PRECISION", "45")
    assert run(capsys, "verify", "--entry", "boalch-31", "--mode", "numeric", "--samples", "3")[0] == EXIT_OK


def test_transform_writes_fixture(capsys, tmp_path):
    out_path = tmp_path / "tilde.txt"
    code, out, _ = run(capsys, "transform", "--entry", "boalch-39", "--pipeline", "okamoto[-1/3,-1/3,-4/5,4/5]",
                       "--out", str(out_path))
    assert code == EXIT_OK
    assert "theta:    (0,0,-7/15,17/15)" in out
    code, out, _ = run(capsys, "verify", "--fixture", str(out_path))
    assert code == EXIT_OK


def test_transform_shape_violation_names_step(capsys):
    code, _, err = run(capsys, "transform", "--entry", "boalch-39", "--pipeline", "fl[s1],manin")
    assert code == EXIT_FAIL
    assert "step 2 (manin)" in err and "(0,A,B,1)" in err


def test_transform_pipeline_file(capsys, tmp_path):
    path = tmp_path / "fold.pipeline"
    path.write_text("# type 39 onto the fold shape\nconj[kitaevA,2]\nkitaevA\n")
    code, out, _ = run(capsys, "transform", "--entry", "boalch-39", "--pipeline", str(path))
    assert code == EXIT_OK and "theta:    (1/3,1/2,1/2,4/5)" in out


def test_residual_inline(capsys):
    code, out, _ = run(capsys, "residual", "--theta", "1/4 1/2 1/2 5/4", "--tower", "r^2=s", "--t", "s", "--y", "r")
    assert code == EXIT_OK and out.startswith("PASS inline")
    code, _, _ = run(capsys, "residual", "--theta", "1/4 1/2 1/2 1/4", "--tower", "r^2=s", "--t", "s", "--y", "r")
    assert code == EXIT_FAIL
    code, _, _ = run(capsys, "residual", "--theta", "1/4 1/2 1/2 5/4", "--t", "s", "--y=s")
    assert code == EXIT_FAIL  # y = t is degenerate
    assert run(capsys, "residual", "--theta", "1/4 1/2 1/2 5/4", "--t", "s")[0] == EXIT_USAGE


def test_catalog_subcommands(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == EXIT_OK and len(out.splitlines()) == 19
    code, out, _ = run(capsys, "catalog", "show", "boalch-31")
    assert code == EXIT_OK and out == fixture_text("boalch-31")
    code, out, _ = run(capsys, "catalog", "branching", "hitchin-dihedral")
    assert code == EXIT_OK and "0: 3,1" in out and "PASS" in out
    assert run(capsys, "catalog", "show")[0] == EXIT_USAGE


@pytest.mark.parametrize("ks, expected", [
    (("2", "2", "0", "-4"), "OkamotoChain"),
    (("1", "0", "0", "1"), "NeedsFractionalLinear"),
    (("1", "0", "0", "0"), "Unreachable"),
])
def test_reachable(capsys, ks, expected):
    code, out, _ = run(capsys, "reachable", *ks)
    assert code == EXIT_OK and out.strip() == expected
