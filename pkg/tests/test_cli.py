import io
import json
import math
import subprocess
import sys

import pytest

from qillum.cli import SCHEMA_LINE, SWEEP_COLUMNS, fmt, main

COHERENT_EXPONENT_DEFAULTS = 4.927104900678274e-06


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "x, text",
    [(1, "1"), (0.5, "5.00000000000e-01"), (math.nan, "nan"), (math.inf, "inf"), (-math.inf, "-inf")],
)
def test_fmt(x, text):
    assert fmt(x) == text


def test_exponent_coherent_json():
    code, out, _ = run("exponent", "--probe", "coherent")
    assert code == 0
    rec = json.loads(out)
    assert rec["exponent"] == pytest.approx(COHERENT_EXPONENT_DEFAULTS, rel=1e-12)
    assert rec["normalization"] == "per_mode"
    assert rec["advantage_db"] is None
    assert rec["modes_required"] == 20_000_000


def test_exponent_total_scales_with_modes():
    _, per, _ = run("exponent", "--modes", "3")
    _, tot, _ = run("exponent", "--modes", "3", "--total")
    assert json.loads(tot)["exponent"] == pytest.approx(3 * json.loads(per)["exponent"], rel=1e-12)


def test_exponent_csv_has_schema_line():
    code, out, _ = run("exponent", "--format", "csv", "--probe", "vacuum")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == SCHEMA_LINE
    row = dict(zip(lines[1].split(","), lines[2].split(",")))
    assert float(row["exponent"]) == 0.0
    assert row["advantage_db"] == ""


def test_sweep_linear_and_values_agree():
    _, a, _ = run("sweep", "--axis", "eta", "--start", "0.1", "--stop", "0.3", "--count", "3")
    _, b, _ = run("sweep", "--axis", "eta", "--values", "0.1,0.2,0.3", "--workers", "2")
    assert a == b
    lines = a.splitlines()
    assert lines[0] == SCHEMA_LINE
    assert lines[1] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == 5
    cells = [float(c) for c in lines[3].split(",")]
    assert cells[0] == pytest.approx(0.2)
    assert cells[4] > cells[3] > 0


def test_sweep_log_scale():
    code, out, _ = run("sweep", "--axis", "N_B", "--start", "1", "--stop", "100", "--count", "3", "--scale", "log")
    assert code == 0
    nb = [float(r.split(",")[2]) for r in out.splitlines()[2:]]
    assert nb == pytest.approx([1, 10, 100])


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--axis", "E", "--values", ","],
        ["sweep", "--axis", "E", "--values", "0.1,0.3,0.2"],
        ["sweep", "--axis", "E"],
        ["sweep", "--axis", "eta", "--values", "0.5,1.5"],
        ["sweep", "--axis", "N_B", "--start", "0", "--stop", "1", "--count", "3", "--scale", "log"],
        ["exponent", "--eta", "1.5"],
        ["verify", "--samples", "0"],
        ["oracle-check", "--tolerance", "-1"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_verify_single_theorem_json():
    code, out, _ = run("verify", "--theorem", "2", "--samples", "50", "--seed", "4")
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["theorem"] == "2" and rep["passed"] and rep["samples"] == 50


def test_verify_is_deterministic():
    argv = ("verify", "--theorem", "3", "--samples", "30", "--seed", "8")
    assert run(*argv)[1] == run(*argv)[1]


def test_verify_failure_exits_1():
    # a negative slack cannot be met
    code, out, _ = run("verify", "--theorem", "1", "--samples", "5", "--slack", "-1")
    assert code == 1
    assert json.loads(out)[0]["passed"] is False


def test_verify_lemma1_flags():
    code, out, _ = run("verify", "--theorem", "lemma1", "--lemma1-samples", "2", "--cutoff", "5")
    assert code == 0
    rep = json.loads(out)[0]
    assert rep["params"] == {"eta": 0.6, "N_B": 0.3, "cutoff": 5}


def test_oracle_check_table_and_json():
    code, out, _ = run("oracle-check")
    assert code == 0
    assert "status      PASS" in out
    code, out, _ = run("oracle-check", "--quantity", "exponent_no_memory", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["passed"] and rec["gap"] < 1e-4


def test_oracle_check_infeasible_exits_3():
    code, _, err = run("oracle-check", "--noise", "5000")
    assert code == 3
    assert "infeasible" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qillum", "exponent", "--probe", "coherent"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["probe"] == "coherent"
