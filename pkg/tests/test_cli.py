import json
import subprocess
import sys

import pytest

from logbs.cli import SCHEMA, run
from logbs.weyl import CONVENTION


def write_job(tmp_path, text, name="job.job"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


XY = "vars = [x, y]\nF = [x, y]\nK = [[1, 1]]\n"
XY_LOCAL = XY + "m = [1, 0]\n"


def run_json(argv, capsys):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_bs_report_fields(tmp_path, capsys):
    code, rep = run_json(["bs", "--job", write_job(tmp_path, XY)], capsys)
    assert code == 0
    assert rep["schema"] == SCHEMA
    assert rep["status"] == "ok"
    assert rep["results"]["generators"] == ["s1 * s2 + s1 + s2 + 1"]
    assert rep["certificates"][0]["verified"] is True
    assert rep["convention"] == CONVENTION


def test_bfun_text_output(tmp_path, capsys):
    job = write_job(tmp_path, "vars = [x]\nF = [x^3]\nK = [1]\n")
    assert run(["bfun", "--job", job]) == 0
    out = capsys.readouterr().out
    assert "s + 2/3" in out and "s + 1/3" in out


def test_localized_run_is_flagged(tmp_path, capsys):
    job = write_job(tmp_path, XY_LOCAL)
    code, rep = run_json(["bs-local", "--job", job], capsys)
    assert code == 2
    assert rep["status"] == "flagged"
    assert "heuristic-stabilization" in rep["flags"]
    code, _ = run_json(["bs-local", "--job", job, "--allow-flagged"], capsys)
    assert code == 0


def test_bs_rejects_localization_vector(tmp_path, capsys):
    code, rep = run_json(["bs", "--job", write_job(tmp_path, XY_LOCAL)], capsys)
    assert code == 1
    assert rep["status"] == "error"


def test_parse_error_is_positioned(tmp_path, capsys):
    job = write_job(tmp_path, "vars = [x]\nF = [x + z]\nK = [1]\n")
    assert run(["bs", "--job", job]) == 1
    err = capsys.readouterr().err
    assert f"{job}:2:10:" in err
    assert "unknown variable" in err


def test_check_replays_certificates(tmp_path, capsys):
    out = str(tmp_path / "rep.json")
    assert run(["bs", "--job", write_job(tmp_path, XY), "--out", out]) == 0
    capsys.readouterr()
    assert run(["check", "--report", out]) == 0
    assert "1/1 certificates verified" in capsys.readouterr().out


def test_check_detects_tampering(tmp_path, capsys):
    out = tmp_path / "rep.json"
    run(["bs", "--job", write_job(tmp_path, XY), "--out", str(out)])
    capsys.readouterr()
    rep = json.loads(out.read_text())
    rep["certificates"][0]["generator"] = "s1 * s2 + s1 + s2 + 2"
    out.write_text(json.dumps(rep))
    assert run(["check", "--report", str(out)]) == 1
    assert "FAILED" in capsys.readouterr().out


@pytest.mark.parametrize("command", ["ann", "locus", "exp", "tower", "report"])
def test_other_commands_succeed(tmp_path, capsys, command):
    job = write_job(tmp_path, XY)
    argv = [command, "--job", job]
    if command == "tower":
        argv += ["--jmax", "2"]
    code, rep = run_json(argv, capsys)
    assert code == 0
    assert rep["command"] == command
    assert rep["status"] == "ok"


def test_exp_output(tmp_path, capsys):
    code, rep = run_json(["exp", "--job", write_job(tmp_path, "vars = [x]\nF = [x^2]\nK = [1]\n")], capsys)
    assert code == 0
    text = json.dumps(rep)
    assert "exp(2 pi i 1/2)" in text


def test_cache_hits_on_second_run(tmp_path, capsys):
    job = write_job(tmp_path, XY)
    cache = str(tmp_path / "cache")
    run_json(["bs", "--job", job, "--cache", cache], capsys)
    _, rep = run_json(["bs", "--job", job, "--cache", cache], capsys)
    assert rep["cache"]["hits"] > 0


def test_batch_report(tmp_path, capsys):
    a = write_job(tmp_path, XY, "a.job")
    b = write_job(tmp_path, "vars = [x]\nF = [x^2]\nK = [1]\n", "b.job")
    code, rep = run_json(["report", "--batch", a, b, "--workers", "2"], capsys)
    assert code == 0
    assert [r["status"] for r in rep["reports"]] == ["ok", "ok"]


def test_console_entry_point(tmp_path):
    job = write_job(tmp_path, XY)
    proc = subprocess.run([sys.executable, "-m", "logbs", "bs", "--job", job], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "(s1 + 1) * (s2 + 1)" in proc.stdout
