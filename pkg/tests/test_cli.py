"""CLI surface: golden reports, exit codes, determinism, formats, figures."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from charbound.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = [
    ("theta_n2_reduced.json", ["theta", "--n", "2", "--t-lo", "2", "--reduced", "--format", "json"]),
    (
        "symrank_m2_n4_d2_strict.json",
        ["symrank", "--m", "2", "--n", "4", "--d", "2", "--convention", "strict", "--format", "json"],
    ),
    ("interp_n8.json", ["interp", "--n", "8", "--format", "json"]),
]


def _capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("fname,argv", GOLDEN_CASES)
def test_golden_reports(fname, argv):
    code, out = _capture(argv)
    assert code == 0
    expected = (GOLDEN / fname).read_text(encoding="utf-8")
    assert out == expected


@pytest.mark.parametrize("fname,argv", GOLDEN_CASES)
def test_repeated_runs_byte_identical(fname, argv):
    first = _capture(argv)
    second = _capture(argv)
    assert first == second


def test_exit_code_usage():
    code, _ = _capture(["theta", "--n", "2"])  # neither --d nor --t-lo
    assert code == 1
    code, _ = _capture(["theta", "--m", "3", "--n", "2", "--d", "2", "--format", "json"])
    assert code == 1  # exact mode rejects m > 2


def test_exit_code_guard():
    code, out = _capture(["theta", "--n", "12", "--t-lo", "6", "--dense", "--format", "json"])
    assert code == 2
    assert json.loads(out)["error"]["code"] == 2


def test_json_error_is_machine_readable():
    code, out = _capture(["kwise", "--n", "4", "--k", "9", "--format", "json"])
    assert code == 1
    err = json.loads(out)["error"]
    assert set(err) == {"code", "message"}


def test_symrank_json_content():
    code, out = _capture(
        ["symrank", "--m", "2", "--n", "3", "--d", "1", "--convention", "strict", "--format", "json"]
    )
    assert code == 0
    d = json.loads(out)
    assert d["formula_value"] == 4
    assert d["witness_dim"] == 4
    assert d["dlsz_floor"] == 4
    assert d["oracle_value"] == 4
    assert d["verified"] is True
    assert d["config"]["convention"] == "strict"


def test_symrank_literal_documents_mismatch():
    code, out = _capture(
        ["symrank", "--m", "2", "--n", "3", "--d", "1", "--convention", "literal", "--format", "json"]
    )
    d = json.loads(out)
    assert d["oracle_value"] == 8  # complete graph under the literal reading
    assert d["verified"] is False


def test_scan_csv_and_empty():
    code, out = _capture(
        ["scan", "--task", "interp", "--n-min", "8", "--n-max", "16", "--step", "8", "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].split(",")[0] == "n"
    assert len(lines) == 3
    code, out = _capture(
        ["scan", "--task", "theta", "--n-min", "4", "--n-max", "2", "--step", "2", "--format", "csv"]
    )
    assert code == 0


def test_scan_theta_rows():
    code, out = _capture(
        ["scan", "--task", "theta", "--n-min", "8", "--n-max", "16", "--step", "8", "--format", "json"]
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [row["n"] for row in rows] == [8, 16]
    for row in rows:
        assert row["log2_complement_lower"] >= row["line_0_0435"]
        assert row["certificate_ok"] is True


def test_scan_plot_writes_figure(tmp_path):
    target = tmp_path / "figure.png"
    code, out = _capture(
        [
            "scan", "--task", "interp", "--n-min", "8", "--n-max", "24", "--step", "8",
            "--plot", str(target), "--format", "csv",
        ]
    )
    assert code == 0
    assert target.exists() and target.stat().st_size > 1000


def test_out_file_matches_stdout(tmp_path):
    target = tmp_path / "report.json"
    code, out = _capture(["interp", "--n", "8", "--format", "json", "--out", str(target)])
    assert code == 0
    assert target.read_text(encoding="utf-8") == out


def test_text_format_runs():
    code, out = _capture(["kwise", "--n", "2", "--k", "1"])
    assert code == 0
    assert "max_zero_prob: 1/2" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "charbound.cli", "interp", "--n", "8", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["B"] == "15/56"


def test_interp_with_search_trials():
    code, out = _capture(["interp", "--n", "8", "--trials", "50", "--seed", "3", "--format", "json"])
    assert code == 0
    d = json.loads(out)
    assert "searched" in d and len(d["searched"]["S"]) == 4


def test_verify_subcommand_wiring(monkeypatch):
    from charbound import cli as cli_mod
    from charbound.verify import CheckResult

    calls = {}

    def fake_suite(suite, seed=0, only=None):
        calls["suite"] = suite
        return [CheckResult("stub", True, "ok", 0.0)]

    monkeypatch.setattr(cli_mod.verify_mod, "run_suite", fake_suite)
    code, out = _capture(["verify", "--suite", "smoke", "--format", "json"])
    assert code == 0 and calls["suite"] == "smoke"
    assert json.loads(out)["all_passed"] is True

    def failing_suite(suite, seed=0, only=None):
        return [CheckResult("stub", False, "broken", 0.0)]

    monkeypatch.setattr(cli_mod.verify_mod, "run_suite", failing_suite)
    code, out = _capture(["verify", "--format", "json"])
    assert code == 3
    assert json.loads(out)["all_passed"] is False
