import json

import pytest

from heisenberg_sampling.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("h,d", [("0.5", "1"), ("0.25", "2"), ("0.125", "4")])
def test_verify_gabor_passes(capsys, h, d):
    code, out, _ = run(capsys, "verify-gabor", "--h", h, "--d", d)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["schema"] == "1"
    assert all(doc["checks"].values())


def test_verify_gabor_density_violation(capsys):
    code, out, _ = run(capsys, "verify-gabor", "--h", "0.6", "--d", "2")
    assert code == 1
    assert "exceeds 1" in json.loads(out)["reason"]


def test_verify_gabor_misaligned_is_usage_error(capsys):
    code, _, err = run(capsys, "verify-gabor", "--h", "0.3", "--d", "1")
    assert code == 2 and "error" in err


def test_verify_gabor_csv(capsys):
    code, out, _ = run(capsys, "verify-gabor", "--h", "0.25", "--d", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("h,d,n,ratio_min")
    assert len(lines) == 2


def test_sinc_point(capsys):
    code, out, _ = run(capsys, "sinc", "--point", "0", "0", "0")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["value"] == pytest.approx(0.25) and row["branch"] == "central-line"


def test_sinc_grid_check(capsys):
    code, out, err = run(capsys, "sinc", "--grid", "5", "--check")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 125
    assert doc["check"]["passed"] and "oracle gap" in err


def test_sinc_check_fails_under_impossible_tolerance(capsys):
    code, _, _ = run(capsys, "sinc", "--grid", "3", "--check", "--tol", "1e-30")
    assert code == 1


def test_sinc_csv(capsys):
    code, out, _ = run(capsys, "sinc", "--grid", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "p,q,t,value,branch"
    assert len(out.strip().splitlines()) == 9


@pytest.mark.parametrize("m,code", [("[-0.5,0.5]:1", 0), ("[-2,2]:1", 1), ("[-0.5,0.5]:2", 0)])
def test_density_examples(capsys, m, code):
    got, out, _ = run(capsys, "density", "--m", m, "--d", "1", "--r", "1")
    assert got == code
    assert json.loads(out)["satisfied"] == (code == 0)


def test_density_unbounded_witness(capsys):
    code, out, _ = run(capsys, "density", "--unbounded-witness", "--d", "2", "--r", "0.5")
    assert code == 1 and not json.loads(out)["satisfied"]


def test_density_from_json_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"intervals": [[-0.25, 0.25, 1]]}))
    code, out, _ = run(capsys, "density", "--m-json", str(path), "--d", "2", "--simplified")
    assert code == 0 and json.loads(out)["simplified"]


def test_density_usage_errors(capsys, tmp_path):
    assert run(capsys, "density", "--d", "1")[0] == 2
    assert run(capsys, "density", "--m", "[0,1]", "--d", "1")[0] == 2
    assert run(capsys, "density", "--m", "[0,1]:1", "--d", "1", "--simplified")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert run(capsys, "density", "--m-json", str(bad), "--d", "1")[0] == 2


def test_missing_input_file_is_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "density", "--m-json", str(tmp_path / "absent.json"), "--d", "1")
    assert code == 3 and "I/O error" in err


def test_unwritable_output_is_io_error(capsys, tmp_path):
    code, _, _ = run(capsys, "sinc", "--point", "0", "0", "0", "--out", str(tmp_path / "no" / "such" / "dir.json"))
    assert code == 3


def test_out_writes_file(capsys, tmp_path):
    path = tmp_path / "table.json"
    code, out, _ = run(capsys, "sinc", "--grid", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert len(json.loads(path.read_text())["rows"]) == 8


def test_unknown_command_and_missing_args(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "verify-gabor", "--h", "0.5")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_report_subset(capsys):
    code, out, err = run(capsys, "report", "--only", "2", "5")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert [c["criterion"] for c in doc["criteria"]] == [2, 5]
    assert "[PASS]  2" in err


def test_report_tolerance_override_forces_failure(capsys):
    code, out, _ = run(capsys, "report", "--only", "2", "--tol", "exact_value=0")
    assert code == 1 and not json.loads(out)["passed"]


def test_report_bad_tolerance_key(capsys):
    assert run(capsys, "report", "--tol", "nonsense=1")[0] == 2
    assert run(capsys, "report", "--tol", "exact_value")[0] == 2
    assert run(capsys, "report", "--only", "99")[0] == 2


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--only", "11", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "criterion,name,passed,seconds"
