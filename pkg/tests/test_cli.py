import math

import numpy as np
import pytest

from chamberflow import utils
from chamberflow.config import settings
from chamberflow.meanfield import potential_rho, vector_field_X
from chamberflow.main import EXIT_MISMATCH, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, run

from conftest import RHO1


def lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_version(capsys):
    assert run(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("chamberflow ")


def test_unknown_command():
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE


def test_catalog_list(capsys):
    assert run(["catalog", "list"]) == EXIT_OK

    out = lines(capsys)
    assert out[-1] == "35 rows"
    assert len(out) == 36
    assert out[0].startswith(RHO1)


def test_catalog_show(capsys):
    assert run(["catalog", "show", RHO1]) == EXIT_OK

    out = "\n".join(lines(capsys))
    assert "Chamber constraints (6):" in out
    assert "Strata: 3 facets, 3 vertices" in out


def test_catalog_show_parametrized(capsys):
    assert run(["catalog", "show", "SOj1SOqj1-SOq2-SO2SOq", "--q", "5", "--j", "2"]) == EXIT_OK
    assert "q=5" in capsys.readouterr().out


def test_catalog_show_errors():
    assert run(["catalog", "show", "nonsense"]) == EXIT_USAGE
    assert run(["catalog", "show"]) == EXIT_USAGE
    assert run(["catalog", "show", "Spj1Spqj1-Spq2-Sp2Spq", "--q", "3", "--j", "1"]) == EXIT_USAGE


def test_flow(capsys, tmp_path):
    out = tmp_path / "t.jsonl"
    code = run(["flow", "--action", RHO1, "--start", "0.2617993877991494,0", "--out", str(out)])
    assert code == EXIT_OK

    summary = lines(capsys)[0]
    assert summary.startswith("collapse ")
    assert "type_I_theory=0.5" in summary

    records = utils.read_records(out)
    assert records[-1]["event"] == "collapse"
    assert records[-1]["type_I_theory"] == 0.5
    assert all(set(record) == {"t", "y", "rho", "x_norm"} for record in records[:-1])


def test_flow_files_reingest(rho1_chamber, tmp_path):
    out = tmp_path / "t.jsonl"
    assert run(["flow", "--action", RHO1, "--start", "0.4,0.1", "--out", str(out)]) == EXIT_OK

    samples = utils.read_records(out)[:-1]
    assert len(samples) > 10
    for record in samples:
        rho = potential_rho(rho1_chamber, record["y"])
        x_norm = float(np.linalg.norm(vector_field_X(rho1_chamber, record["y"])))

        assert abs(rho - record["rho"]) <= 1e-12 * max(1.0, abs(rho))
        assert abs(x_norm - record["x_norm"]) <= 1e-12 * max(1.0, x_norm)


@pytest.mark.parametrize(
    "args",
    [
        ["flow", "--action", RHO1, "--start", "0.4,0.1"],
        ["cascade", "--action", RHO1, "--start", "0.3,0.05"],
        ["check", "--action", RHO1, "--points", "10", "--seed", "11", "--workers", "2"],
    ],
    ids=["flow", "cascade", "check"],
)
def test_same_seed_same_bytes(args, capsys, tmp_path):
    first, second = tmp_path / "first.jsonl", tmp_path / "second.jsonl"

    assert run(args + ["--out", str(first)]) == EXIT_OK
    printed = capsys.readouterr().out.replace(str(first), "")

    assert run(args + ["--out", str(second)]) == EXIT_OK
    assert capsys.readouterr().out.replace(str(second), "") == printed

    assert first.read_bytes() == second.read_bytes()


def test_flow_errors():
    assert run(["flow", "--action", RHO1]) == EXIT_USAGE
    assert run(["flow", "--action", RHO1, "--start", "0.1"]) == EXIT_USAGE
    assert run(["flow", "--action", RHO1, "--start=-0.1,0"]) == EXIT_NUMERIC
    assert run(["flow", "--start", "0.2,0"]) == EXIT_USAGE


def test_cascade(capsys):
    assert run(["cascade", "--action", RHO1, "--start", "0.2617993877991494,0.01"]) == EXIT_OK

    out = lines(capsys)
    assert out[0] == f"cascade of 2 collapse(s) on {RHO1}"


def test_minimal(capsys, tmp_path):
    out = tmp_path / "w0.jsonl"
    assert run(["minimal", "--action", RHO1, "--out", str(out)]) == EXIT_OK

    line = lines(capsys)[0]
    assert line.startswith("w0 = ")
    x1, x2 = (float(x) for x in line[len("w0 = "):].split(","))
    assert math.isclose(x1, math.pi / 6, abs_tol=1e-12)
    assert abs(x2) < 1e-12
    assert utils.read_records(out)[0]["event"] == "minimal_point"


def test_backtrace(capsys):
    assert run(["backtrace", "--action", RHO1, "--start", "0,0.3"]) == EXIT_OK

    out = lines(capsys)
    assert len(out) == 3
    assert out[-1].startswith("reverse flows agree within ")


def test_backtrace_needs_a_facet():
    assert run(["backtrace", "--action", RHO1]) == EXIT_USAGE
    assert run(["backtrace", "--action", RHO1, "--start", "0.3,0"]) == EXIT_NUMERIC


def test_spectrum(capsys):
    assert run(["spectrum", "--action", RHO1, "--start", "0.5235987755982988,0", "--J", "50"]) == EXIT_OK

    out = lines(capsys)
    assert out[0].startswith("Shape operator at")
    assert any(line.strip().startswith("trace ") for line in out)
    assert any("regularized trace J=50" in line for line in out)


def test_spectrum_arctan(capsys):
    assert run(["spectrum", "--arctan", "1,1", "--K", "3"]) == EXIT_OK
    assert "7 values" in capsys.readouterr().out


def test_spectrum_needs_input():
    assert run(["spectrum"]) == EXIT_USAGE


def test_check_row(capsys, tmp_path):
    out = tmp_path / "check.jsonl"
    code = run(["check", "--action", RHO1, "--points", "10", "--out", str(out), "--workers", "1"])
    assert code == EXIT_OK

    text = capsys.readouterr().out
    assert "table3: 1/1 ok" in text
    assert f"report: {out}" in text

    checks = {record["check"] for record in utils.read_records(out)}
    assert checks == {
        "gradient",
        "consistency",
        "convexity",
        "table3",
        "multiplicity",
        "tangency",
        "cot_series",
    }


def test_check_reports_a_mismatch(monkeypatch, tmp_path):
    empty = tmp_path / "allowlist.yml"
    empty.write_text("{}\n", encoding="utf-8")
    monkeypatch.setenv("CHAMBERFLOW_ALLOWLIST", str(empty))

    code = run(
        ["check", "--action", "SOq2-SUq2-SU2Uq", "--points", "10", "--out", str(tmp_path / "c.jsonl")]
    )
    assert code == EXIT_MISMATCH


def test_check_strict_gates_audits(monkeypatch, tmp_path):
    args = ["check", "--action", "Sp4-E6-Spin10U1", "--points", "5", "--out", str(tmp_path / "c.jsonl")]
    assert run(args) == EXIT_OK
    assert run(args + ["--strict"]) == EXIT_OK

    empty = tmp_path / "allowlist.yml"
    empty.write_text("{}\n", encoding="utf-8")
    monkeypatch.setenv("CHAMBERFLOW_ALLOWLIST", str(empty))

    assert run(args) == EXIT_OK
    assert run(args + ["--strict"]) == EXIT_MISMATCH


def test_check_target():
    assert run(["check"]) == EXIT_USAGE
    assert run(["check", "--all", "--action", RHO1]) == EXIT_USAGE


def test_config_file(tmp_path):
    path = tmp_path / "options.yml"
    path.write_text("rtol: 1.0e-9\nseed: 7\n", encoding="utf-8")

    assert run(["--config", str(path), "catalog", "list"]) == EXIT_OK
    assert settings()["rtol"] == 1e-9
    assert settings()["seed"] == 7


@pytest.mark.parametrize("content", ["- 1\n- 2\n", "speed: 3\n"])
def test_bad_config_file(tmp_path, content):
    path = tmp_path / "options.yml"
    path.write_text(content, encoding="utf-8")

    assert run(["--config", str(path), "catalog", "list"]) == EXIT_USAGE


def test_missing_config_file(tmp_path):
    assert run(["--config", str(tmp_path / "absent.yml"), "catalog", "list"]) == EXIT_USAGE
