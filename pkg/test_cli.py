"""
End-to-end tests of the command line entry point.
"""

import json
import math

import numpy as np
import pandas as pd
import pytest

from main import main
from src.config.constants import SCAN_COLUMNS, ExitCode
from src.utils.helpers import format_float

LIGHT = ["--starts", "0", "--grid-floor", "12"]


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.delenv("TELEBELL_THREADS", raising=False)
    config = str(tmp_path / "absent.yaml")

    async def _run(*argv):
        return await main(["--config", config, "--log-level", "WARNING", *argv])

    return _run


@pytest.mark.asyncio
async def test_analyze_prints_report(run, capsys):
    code = await run("analyze", "--state", "werner", *LIGHT)
    assert code == ExitCode.OK
    report = json.loads(capsys.readouterr().out)
    assert report["state"] == "werner"
    assert report["beta"] == pytest.approx(2.0, abs=1e-9)
    assert report["tau_raw"] <= 2.0 + 1e-6
    assert report["f_st"] == pytest.approx(0.5 + 1 / (2 * math.sqrt(2)), abs=1e-12)
    assert report["fidelity_class"] == "nonclassical"
    assert report["optimizer"]["starts"] == 0


@pytest.mark.asyncio
async def test_analyze_family_conditions(run, capsys):
    code = await run("analyze", "--state", "d_lambda_alpha 0.7745966692414834 0.8660254037844386", *LIGHT)
    assert code == ExitCode.OK
    report = json.loads(capsys.readouterr().out)
    assert report["conditions"]["lambda"] == pytest.approx(math.sqrt(3 / 5))
    assert report["conditions"]["in_paper_region"] is True
    assert report["bell_violating"] is True
    assert report["tau_raw"] <= 2.0 + 1e-6


@pytest.mark.asyncio
async def test_analyze_writes_json_file(run, capsys, tmp_path):
    out = tmp_path / "reports" / "phi.json"
    code = await run("analyze", "--state", "bell Phi+", "--json", str(out), *LIGHT)
    assert code == ExitCode.OK
    printed = json.loads(capsys.readouterr().out)
    assert json.loads(out.read_text(encoding="utf-8")) == printed
    assert printed["tau_raw"] == pytest.approx(2 * math.sqrt(2), abs=1e-9)


@pytest.mark.asyncio
async def test_analyze_is_deterministic(run, capsys):
    await run("analyze", "--state", "d_lambda_alpha 0.9 0.3", *LIGHT)
    first = capsys.readouterr().out
    await run("analyze", "--state", "d_lambda_alpha 0.9 0.3", *LIGHT)
    assert capsys.readouterr().out == first


@pytest.mark.asyncio
async def test_parse_error_exit_code(run, capsys):
    assert await run("analyze", "--state", "werner 2") == ExitCode.PARSE_ERROR
    assert "Error" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_malformed_config_exit_code(tmp_path, capsys):
    config = tmp_path / "config.yaml"
    config.write_text("optimizer: [starts: 3\n", encoding="utf-8")
    code = await main(["--config", str(config), "analyze", "--state", "werner"])
    assert code == ExitCode.PARSE_ERROR
    assert "invalid configuration" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_invalid_state_exit_code(run, capsys, tmp_path):
    path = tmp_path / "bad.txt"
    entries = np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex).ravel()
    path.write_text("\n".join(f"{z.real!r} {z.imag!r}" for z in entries) + "\n", encoding="utf-8")
    assert await run("analyze", "--state", str(path)) == ExitCode.INVALID_STATE
    assert "min_eigenvalue: -0.5" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_unwritable_output_exit_code(run, tmp_path):
    code = await run("analyze", "--state", "maximally_mixed", "--json", str(tmp_path), *LIGHT)
    assert code == ExitCode.OUTPUT_ERROR


@pytest.mark.asyncio
async def test_scan_writes_csv(run, tmp_path):
    out = tmp_path / "scan.csv"
    code = await run("scan", "--lambda", "0.5:0.6:0.1", "--alpha", "0.2:0.8:0.3",
                     "--out", str(out), "--threads", "1", *LIGHT)
    assert code == ExitCode.OK

    frame = pd.read_csv(out, float_precision="round_trip")
    assert list(frame.columns) == SCAN_COLUMNS
    assert len(frame) == 6
    assert list(frame["lambda"]) == [0.5, 0.5, 0.5, 0.6, 0.6, 0.6]
    assert list(frame["alpha"]) == [0.2, 0.5, 0.8] * 2
    assert (frame["beta"] >= frame["tau_raw"] - 1e-6).all()


@pytest.mark.asyncio
async def test_scan_family_rows(run, tmp_path):
    out = tmp_path / "family.csv"
    code = await run("scan", "--lambda", "0:0.8:0.4", "--alpha", "0.45",
                     "--out", str(out), "--threads", "1", *LIGHT)
    assert code == ExitCode.OK

    frame = pd.read_csv(out, float_precision="round_trip")
    assert list(frame["lambda"]) == [0.0, 0.4, 0.8]

    mixed = frame.iloc[0]
    assert mixed["beta"] == pytest.approx(0.0, abs=1e-12)
    assert mixed["tau_raw"] == pytest.approx(0.0, abs=1e-12)
    assert mixed["f_st"] == pytest.approx(0.5, abs=1e-12)
    assert not mixed[["bell_violating", "tele_violating", "nonclassical_fidelity", "in_paper_region"]].any()

    flagged = frame[frame["in_paper_region"]]
    assert list(flagged["lambda"]) == [0.8]
    assert (flagged["beta"] > 2.0).all()
    assert (flagged["tau_raw"] <= 2.0 + 1e-6).all()
    assert flagged["bell_violating"].all()

    text = pd.read_csv(out, dtype=str)
    for column in ("beta", "tau_raw", "f_st"):
        assert list(text[column]) == [format_float(v) for v in frame[column]]


@pytest.mark.asyncio
async def test_scan_parallel_matches_serial(run, tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    grid = ["--lambda", "0.8:1:0.2", "--alpha", "0.5:0.9:0.4", *LIGHT]
    assert await run("scan", *grid, "--out", str(serial), "--threads", "1") == ExitCode.OK
    assert await run("scan", *grid, "--out", str(parallel), "--threads", "2") == ExitCode.OK
    assert serial.read_text() == parallel.read_text()


@pytest.mark.asyncio
async def test_scan_rejects_bad_grid(run, tmp_path):
    code = await run("scan", "--lambda", "0:2:0.5", "--alpha", "0.5", "--out", str(tmp_path / "x.csv"))
    assert code == ExitCode.PARSE_ERROR


@pytest.mark.asyncio
async def test_verify_protocol_suite(run, capsys):
    code = await run("verify", "protocol", "--trials", "5", "--seed", "3")
    assert code == ExitCode.OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "protocol:" in out
