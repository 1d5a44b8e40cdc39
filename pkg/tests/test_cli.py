import json
import subprocess
import sys

import pytest

from steklov.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_oracles(capsys):
    assert run(capsys, "oracle", "sov", "--k", "1", "--n", "2", "--m", "0")[1].startswith("1.377105")
    assert run(capsys, "oracle", "asym", "--k", "1", "--n1", "0.41421356", "--rho", "0.25")[1].startswith("0.6063309")
    code, out, _ = run(capsys, "oracle", "sov", "--k", "1", "--n", "2+i")
    assert code == 0 and out.strip().endswith("i")
    code, out, _ = run(capsys, "oracle", "annulus", "--k", "1", "--n", "1", "--rho", "0.3")
    assert float(out) == pytest.approx(0.575080915004306, abs=1e-12)
    assert len(run(capsys, "oracle", "sov", "--k", "1", "--n", "2")[1].strip()) == 16


def test_oracle_pole_exit(capsys):
    code, _, err = run(capsys, "oracle", "sov", "--k", "2.404825557695773", "--n", "1")
    assert code == 3 and "error" in err


def test_estimate(capsys):
    code, out, _ = run(capsys, "estimate", "--lambda1", "0.575080915", "--k", "1")
    data = json.loads(out)
    assert code == 0 and data["n_approx"] == pytest.approx(1.0, abs=1e-6)
    assert set(data) == {"lambda_target", "n_approx", "n_approx2", "iterations", "residual"}


def test_estimate_bracket_exit(capsys):
    # at k = 0.4 the m = 0 branch has no pole below n = 25 and starts near 0.08
    assert run(capsys, "estimate", "--lambda1", "0.01", "--k", "0.4")[0] == 4


def test_estimate_two_step_from_config(tmp_path, capsys):
    cfg = write(tmp_path, {"medium": {"type": "disk", "radius": 0.5, "inner": 2}})
    code, out, _ = run(capsys, "estimate", "--config", cfg, "--two-step")
    data = json.loads(out)
    assert code == 0 and data["n_approx2"] > data["n_approx"]


def test_eigen_csv_json_and_dump(tmp_path, capsys):
    code, out, _ = run(capsys, "eigen", "--num-eigs", "3", "--dump-matrices", str(tmp_path / "m"))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "index,lambda_re,lambda_im,residual" and len(lines) == 4
    assert (tmp_path / "m" / "A.txt").exists() and (tmp_path / "m" / "B.txt").exists()
    cfg = write(tmp_path, {"outputs": {"format": "json", "path": str(tmp_path / "e.json")}})
    assert run(capsys, "eigen", "--config", cfg)[0] == 0
    data = json.loads((tmp_path / "e.json").read_text())
    assert len(data["eigenvalues"]) == 5


def test_converge_and_field(tmp_path, capsys):
    code, out, _ = run(capsys, "converge", "--n-values", "10,25")
    assert code == 0 and out.splitlines()[0] == "N,lambda_re,lambda_im,rel_error"
    code, out, _ = run(capsys, "field", "--grid", "5", "-o", str(tmp_path / "f.csv"))
    text = (tmp_path / "f.csv").read_text()
    assert code == 0 and text.splitlines()[0] == "x,y,re,im" and len(text.splitlines()) == 26


def test_validate_and_project(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0 and "[PASS] wronskian" in out
    code, out, _ = run(capsys, "project", "--n-values", "8,16")
    assert code == 0 and out.startswith("N,l2_error,h1_error")


def test_config_errors(tmp_path, capsys):
    bad = write(tmp_path, {"basis": {"bogus": 1}})
    assert run(capsys, "eigen", "--config", bad)[0] == 2
    bad = write(tmp_path, {"medium": {"type": "expression", "expr": "2+*r"}})
    code, _, err = run(capsys, "eigen", "--config", bad)
    assert code == 2 and "byte 3" in err


def test_print_config_round_trip(tmp_path, capsys):
    cfg = write(tmp_path, {"medium": {"type": "polar", "rho": "0.3*(2+0.3*cos(3*theta))", "inner": 2}})
    _, out, _ = run(capsys, "eigen", "--config", cfg, "--print-config")
    again = write(tmp_path, json.loads(out), "again.json")
    _, out2, _ = run(capsys, "eigen", "--config", again, "--print-config")
    assert out == out2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "steklov", "oracle", "sov", "--k", "1", "--n", "1"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "0.575080915004306"
