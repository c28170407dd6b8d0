import json
import os
import pathlib
import subprocess
import sys

from typer.testing import CliRunner

from padic_eis.cli import app

ROOT = pathlib.Path(__file__).resolve().parent.parent
runner = CliRunner()


def _env():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join([str(ROOT / "src"), env.get("PYTHONPATH", "")])
    return env


def test_cli_exit_code_for_unknown_series(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "padic_eis.cli", "series", "nonexistent", "--p", "7", "--out", str(tmp_path)],
        capture_output=True,
        env=_env(),
    )
    assert result.returncode == 2


def test_series_writes_json(tmp_path):
    result = runner.invoke(app, ["series", "j", "--p", "7", "--order", "4", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    data = json.loads((tmp_path / "series_j_p7.json").read_text())
    assert data["v"] == -1
    assert [c[0] for c in data["coefficients"][:2]] == [1, 744]


def test_bad_prime_is_a_usage_error(tmp_path):
    result = runner.invoke(app, ["check-conditions", "--family", "ex1", "--k", "5", "--p", "5", "--out", str(tmp_path)])
    assert result.exit_code == 2
    result = runner.invoke(app, ["check-conditions", "--family", "ex7", "--k", "5", "--p", "7", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_check_conditions_output(tmp_path):
    result = runner.invoke(app, ["check-conditions", "--family", "k3", "--p", "5", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    data = json.loads((tmp_path / "conditions_k3_k4_p5.json").read_text())
    assert data["kp"] == 432


def test_uncertified_decomposition_exits_3(tmp_path):
    result = runner.invoke(app, [
        "decompose", "E3b", "--p", "7", "--order", "60", "--n", "59",
        "--precision", "3", "--guard", "0", "--out", str(tmp_path),
    ])
    assert result.exit_code == 3


def test_csv_needs_a_table(tmp_path):
    result = runner.invoke(app, ["series", "E4", "--p", "7", "--order", "5", "--format", "csv", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_reproduce_exit_codes(tmp_path):
    (tmp_path / "fx.json").write_text(json.dumps({
        "good": {"value": ["1", "744"], "provenance": "published: j-expansion"},
        "bad": {"value": ["1", "745"], "provenance": "deliberately corrupted"},
    }))
    manifest = {"name": "t", "fixtures": "fx.json",
                "jobs": [{"id": "j", "command": "series", "series": "j", "p": 7, "N": 3, "fixture": "good"}]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(manifest))
    out = tmp_path / "out"
    result = runner.invoke(app, ["reproduce", str(path), "--jobs", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert json.loads((out / "reproduce.json").read_text())["results"][0]["status"] == "pass"

    manifest["jobs"][0]["fixture"] = "bad"
    path.write_text(json.dumps(manifest))
    result = runner.invoke(app, ["reproduce", str(path), "--jobs", "1", "--out", str(out)])
    assert result.exit_code == 1

    manifest["jobs"][0]["fixture"] = "absent"
    path.write_text(json.dumps(manifest))
    result = runner.invoke(app, ["reproduce", str(path), "--jobs", "1", "--out", str(out)])
    assert result.exit_code == 2


def test_cache_clear(tmp_path):
    result = runner.invoke(app, ["cache-clear", "--cache-dir", str(tmp_path)])
    assert result.exit_code == 0
    assert "removed 0" in result.output


def test_uncertified_residue_exits_3(tmp_path):
    result = runner.invoke(app, [
        "residue", "--a", "1", "--b", "2", "--r", "3", "--p", "7", "--order", "60",
        "--precision", "2", "--guard", "0", "--out", str(tmp_path),
    ])
    assert result.exit_code == 3
    assert "uncertified" in result.output
    data = json.loads((tmp_path / "residue_1_2_3_p7.json").read_text())
    assert data["dlog_status"] == "uncertified"
