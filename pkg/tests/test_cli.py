import json
import subprocess
import sys

import pytest

from amwp import cli
from amwp.verify import SuiteResult


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "amwp", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_metric_json_has_metadata():
    code, out, _ = run("metric", "--catalog", "STU", "--at", "1,1,1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data["meta"]) >= {"tool", "version", "command", "source", "seed", "kappa", "s_normalization"}
    assert data["meta"]["source"] == "catalog:STU"
    assert len(data["g"]) == 3


def test_symbolic_scalar_matches_published():
    code, out, _ = run("scalar", "--catalog", "STU", "--symbolic", "--at", "1,1,1")
    assert code == 0
    assert "matches published expression: True" in out
    assert "-1378/375" in out


def test_ray_scan_csv_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run("scalar", "--catalog", "STU", "--ray", "s^2,s,s", "--samples", "10,100,1000", "-o", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("# tool=amwp")
    assert "s,y1,y2,y3,f,scalar,s_float,scalar_float,in_cone" in text


def test_verify_is_deterministic_per_seed():
    outs = [run("verify", "--suite", "bounds", "--n", "30", "--seed", "4")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "PASS bounds: 3/3" in outs[0]


def test_verify_failure_exit_code(monkeypatch, capsys):
    def failing(name, seed, n=None, catalog_name=None):
        res = SuiteResult(name)
        res.record(False, "forced")
        return res

    monkeypatch.setattr(cli, "run_suite", failing)
    assert cli.main(["verify", "--suite", "thm3_7"]) == 1
    assert "FAILURES PRESENT" in capsys.readouterr().out


@pytest.mark.parametrize("args", [
    ("metric", "--catalog", "nope"),
    ("metric",),
    ("metric", "--catalog", "STU", "--at", "1,2"),
    ("scalar", "--catalog", "STU", "--ray", "s,os,s", "--samples", "1"),
    ("scalar", "--catalog", "STU", "--at", "0,0,1"),
    ("polytope", "dual", "--catalog", "STU"),
    ("perturb", "periodicity", "--catalog", "STU", "--point", "-1i,-1i,-1i"),
    ("verify", "--suite", "bounds", "--catalog", "type2(1,0,1)", "--n", "3"),
    ("catalog", "show"),
    ("frobnicate",),
])
def test_input_errors_exit_2(args):
    code, _, err = run(*args)
    assert code == 2, err
    assert "Traceback" not in err


def test_bad_input_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"mode": "monomials", "r": 3, "terms": [[[1, 1], 2]]}')
    code, _, err = run("metric", "--input", str(bad))
    assert code == 2 and "Traceback" not in err
    code, _, err = run("polytope", "points", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_polytope_commands():
    code, out, _ = run("polytope", "points", "--catalog", "delta_P11128_polar")
    assert code == 0 and json.loads(out)["count"] == 11
    code, out, _ = run("polytope", "dual", "--catalog", "delta_P11128")
    assert json.loads(out)["dual_vertices"][-1] == [-12, -8, -2, -1]


def test_perturb_csv():
    code, out, _ = run("perturb", "asymptotic", "--catalog", "STU", "--tail", "1,0,0:0.01", "--scales", "1,2",
                       "--no-curvature")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines() if not line.startswith("#")]
    assert rows[0] == ["s", "metric_deviation", "curvature_deviation"]
    assert float(rows[1][1]) / float(rows[2][1]) >= 100


def test_catalog_listing():
    code, out, _ = run("catalog", "list")
    assert code == 0 and "STU" in out.split()
    code, out, _ = run("catalog", "show", "V12_11136", "--format", "json")
    assert "EMENDED" in json.loads(out)["entry"]["notes"]
