import json
import subprocess
import sys

import numpy as np
import pytest

from oslab import cli, suites
from oslab.errors import InvalidInput
from oslab.tensor import random_tensor


def run_cli(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def strip_volatile(text):
    return "\n".join(l for l in text.splitlines() if '"timestamp"' not in l and '"jobs"' not in l)


def test_twisted_chain_example(capsys):
    code, out, _ = run_cli(["twisted-chain", "--random", "--count", "100", "--dims", "3", "3", "--seed", "7"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["schema"] == "oslab/1"
    assert len(report["rows"]) == 300
    assert all(r["pass"] for r in report["rows"])
    assert [r["instance"] for r in report["rows"]] == sorted(r["instance"] for r in report["rows"])


def test_fourier_example(capsys):
    code, out, _ = run_cli(["fourier", "--group", "S3", "--suite", "all"], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["failed"] == 0


def test_empty_instance_list(tmp_path, capsys):
    p = tmp_path / "empty.json"
    p.write_text("[]")
    code, out, _ = run_cli(["norms", "--input", str(p)], capsys)
    report = json.loads(out)
    assert code == 0 and report["rows"] == [] and report["summary"]["checks"] == 0


def test_no_source_gives_empty_report(capsys):
    code, out, _ = run_cli(["rainwater"], capsys)
    assert code == 0 and json.loads(out)["rows"] == []


def test_input_file_norms(tmp_path, capsys):
    rng = np.random.default_rng(0)
    tensors = [random_tensor(rng, 2, 3, 2).to_json() for _ in range(2)]
    p = tmp_path / "w.json"
    p.write_text(json.dumps({"tensors": tensors}))
    code, out, _ = run_cli(["norms", "--input", str(p), "--restarts", "2"], capsys)
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 12
    assert {r["inputs_hash"] for r in rows} == {suites.inputs_hash(t) for t in tensors}


def test_determinism_and_jobs(tmp_path):
    args = ["rainwater", "--random", "--count", "4", "--seed", "11", "--restarts", "1"]
    outs = []
    for extra in ([], [], ["--jobs", "2"]):
        path = tmp_path / f"r{len(outs)}.json"
        assert cli.main(args + extra + ["--output", str(path)]) == 0
        outs.append(strip_volatile(path.read_text()))
    assert outs[0] == outs[1] == outs[2]


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("OSLAB_SEED", "42")
    _, out, _ = run_cli(["cocycle", "--count", "1", "--suite", "trig"], capsys)
    assert json.loads(out)["config"]["seed"] == 42
    monkeypatch.setenv("OSLAB_SEED", "x")
    code, _, err = run_cli(["cocycle"], capsys)
    assert code == 2 and "OSLAB_SEED" in err


def test_malformed_json_diagnostics(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('[{"dimE": 2,\n "dimF": 2 "pairs": []}]')
    code, _, err = run_cli(["norms", "--input", str(p)], capsys)
    assert code == 2 and "bad.json:2:" in err


def test_malformed_field_diagnostics(tmp_path, capsys):
    w = random_tensor(np.random.default_rng(1), 2, 2, 1).to_json()
    w["pairs"][0]["a"] = [[[1, 0]]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps([w, w]))
    code, _, err = run_cli(["norms", "--input", str(p)], capsys)
    assert code == 2 and "[0]" in err and "pairs[0].a" in err


def test_missing_file(capsys):
    code, _, err = run_cli(["norms", "--input", "/nonexistent/x.json"], capsys)
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("kwargs", [
    {"dims": (9, 2)},
    {"tol": -1.0},
    {"tol": 0.0},
    {"count": -1},
    {"format": "xml"},
    {"command": "frobnicate"},
])
def test_config_validation(kwargs):
    base = {"command": "norms"} | kwargs
    with pytest.raises(InvalidInput):
        cli.ExperimentConfig(**base)


def test_group_order_limit(capsys):
    code, _, err = run_cli(["fourier", "--group", "S4xZ2"], capsys)
    assert code == 2 and "exceeds" in err


def test_unknown_suite(capsys):
    code, _, err = run_cli(["fourier", "--suite", "bogus"], capsys)
    assert code == 2


def test_group_from_file(tmp_path, capsys):
    from oslab.fourier import dihedral_group

    p = tmp_path / "g.json"
    p.write_text(json.dumps(dihedral_group(3).to_json()))
    code, out, _ = run_cli(["fourier", "--input", str(p), "--suite", "norms", "--count", "3"], capsys)
    assert code == 0 and json.loads(out)["rows"]


def test_algebras_from_file(tmp_path, capsys):
    from oslab.hochschild import dual_numbers, random_commutative_algebra

    algs = [dual_numbers().to_json(), random_commutative_algebra(np.random.default_rng(2), 3).to_json()]
    p = tmp_path / "a.json"
    p.write_text(json.dumps(algs))
    code, out, _ = run_cli(["cocycle", "--input", str(p), "--count", "4"], capsys)
    assert code == 0 and json.loads(out)["summary"]["checks"] > 0


def test_failed_check_sets_exit_code(monkeypatch):
    def failing(i, w, restarts, seed, tol):
        return [suites.le("forced", i, "h", 2.0, 1.0, tol)]

    monkeypatch.setitem(cli._ROW_FUNCS, "twisted-chain", failing)
    code, report = cli.run(cli.ExperimentConfig("twisted-chain", random=True, count=2))
    assert code == 1 and report["summary"]["failed"] == 2
    assert report["rows"][0]["margin"] < 0


def test_csv_output(tmp_path):
    path = tmp_path / "r.csv"
    assert cli.main(["cocycle", "--suite", "trig", "--count", "2", "--format", "csv", "--output", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "command,name,instance,inputs_hash,lhs,rhs,margin,pass"
    assert len(lines) > 1


def test_all_command(capsys):
    code, out, _ = run_cli(["all", "--count", "2", "--restarts", "1"], capsys)
    report = json.loads(out)
    assert code == 0
    assert {r["command"] for r in report["rows"]} == {"norms", "twisted-chain", "rainwater", "cocycle", "fourier"}


def test_float_formatting():
    assert cli.dumps(0.1) == "0.10000000000000001"
    assert cli.dumps({"x": [1, 2.5, True, None]}).count("\n") > 0
    assert json.loads(cli.dumps({"a": 1 / 3}))["a"] == 1 / 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oslab.cli", "cocycle", "--suite", "polarization", "--count", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "oslab/1"
