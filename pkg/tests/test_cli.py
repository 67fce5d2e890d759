import csv
import dataclasses
import io
import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from legmoments.cli import (
    EXIT_FAIL, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_USAGE, RunConfig, UsageError, emit_report,
    exit_code, parse_degree, read_config, run,
)
from legmoments.identities import CATALOG
from legmoments.identities.engine import make_document
from legmoments.report import RECORD_COLUMNS, VerificationRecord
from legmoments.special.core import SpecialValue


def call(argv, env=None):
    """Run the CLI in-process; returns (code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old = {k: os.environ.get(k) for k in (env or {})}
    os.environ.update(env or {})
    try:
        code = run(argv, out, err)
    finally:
        for k, v in old.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _no_env_tol(monkeypatch):
    monkeypatch.delenv("LM_DEFAULT_TOL", raising=False)


# ---------------------------------------------------------------- examples

def test_verify_sc_z5_json():
    code, out, _ = call(["verify", "--id", "SC_Z5"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["records"]) == 1
    assert doc["records"][0]["id"] == "SC_Z5" and doc["records"][0]["pass"] is True


def test_verify_unreachable_tolerance():
    code, out, _ = call(["verify", "--id", "A", "--nu", "0.25", "--tol", "1e-30"])
    assert code == EXIT_NO_CONVERGENCE
    assert json.loads(out)["records"][0]["tol"] == 1e-30


def test_suite_quick_csv(tmp_path):
    path = tmp_path / "r.csv"
    code, out, _ = call(["suite", "--profile", "quick", "--format", "csv", "--out", str(path)])
    assert code == EXIT_OK
    assert out == ""
    rows = list(csv.reader(path.open()))
    assert tuple(rows[0]) == RECORD_COLUMNS
    assert len(rows) >= 26
    assert all(r[RECORD_COLUMNS.index("pass")] == "true" for r in rows[1:])


def test_list_prints_catalog():
    code, out, _ = call(["list"])
    assert code == EXIT_OK
    ids = [line.split()[0] for line in out.splitlines()[1:]]
    assert sorted(ids) == sorted(CATALOG)


def test_complex_degree_and_case_insensitive_id():
    code, out, _ = call(["verify", "--id", "b", "--nu", "0.8,0.4"])
    assert code == EXIT_OK
    assert json.loads(out)["records"][0]["params"]["nu"] == [0.8, 0.4]
    code, out, _ = call(["verify", "--id", "a", "--nu", "-0.3,0.2"])
    assert code == EXIT_OK
    code, _, _ = call(["verify", "--id", "a", "--nu=-0.3,0.2"])
    assert code == EXIT_OK


def test_sweep_and_asym():
    code, out, _ = call(["sweep", "--id", "SIN2COT", "--nu-start", "0.2", "--nu-end", "0.4",
                         "--steps", "3", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert [r["params"]["nu"] for r in doc["records"]] == [0.2, 0.30000000000000004, 0.4]
    assert doc["meta"]["profile"] == "sweep"
    code, out, _ = call(["asym", "--check", "cubic", "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(out)["meta"]["profile"] == "asym:cubic"


@pytest.mark.parametrize("argv", [
    ["sweep", "--id", "SC_Z5", "--nu-start", "0", "--nu-end", "1", "--steps", "2"],
    ["sweep", "--id", "SIN2COT", "--nu-start", "0.2"],
    ["sweep", "--id", "SIN2COT", "--nu-start", "0.2", "--nu-end", "0.4", "--steps", "0"],
    ["sweep", "--id", "IIKK", "--nu-start", "0.5", "--nu-end", "-1.5", "--steps", "3"],
    ["asym"],
    ["asym", "--check", "nope"],
    ["verify"],
    ["verify", "--id", "NOPE"],
    ["verify", "--id", "SC_Z5", "--nu", "0.3"],
    ["verify", "--id", "PQ_T", "--n", "-1", "--x", "0.3"],
    ["verify", "--id", "PQ_T", "--n", "2", "--x", "1.5"],
    ["verify", "--id", "SC_Z5", "--tol", "0"],
    ["verify", "--id", "SC_Z5", "--tol", "abc"],
    ["suite", "--profile", "medium"],
    ["suite", "--parallelism", "0"],
    ["suite", "--tol-override", "NOPE=1e-3"],
    ["suite", "--tol-override", "A"],
    ["bogus"],
    ["verify", "--id", "SC_Z5", "--bogus"],
])
def test_usage_errors(argv, capsys):
    code, _, err = call(argv)
    assert code == EXIT_USAGE
    assert err or capsys.readouterr().err


def test_help_and_version(capsys):
    assert call(["--help"])[0] == EXIT_OK
    assert call(["--version"])[0] == EXIT_OK
    assert "legmoments" in capsys.readouterr().out


def test_unwritable_output(tmp_path):
    bad = tmp_path / "missing" / "r.json"
    code, _, err = call(["verify", "--id", "SC_Z5", "--out", str(bad)])
    assert code == EXIT_USAGE
    assert "cannot write" in err


def test_exit_one_on_mismatch(monkeypatch):
    spec = CATALOG["SC_Z5"]
    off = dataclasses.replace(spec, rhs=lambda p, t: SpecialValue(complex(spec.rhs(p, t).value) + 1e-3, 0.0))
    monkeypatch.setitem(CATALOG, "SC_Z5", off)
    code, out, _ = call(["verify", "--id", "SC_Z5"])
    assert code == EXIT_FAIL
    assert json.loads(out)["records"][0]["pass"] is False


# ------------------------------------------------------ environment, config

def test_env_tolerance():
    code, out, _ = call(["verify", "--id", "SC_Z5"], env={"LM_DEFAULT_TOL": "1e-30"})
    assert code == EXIT_NO_CONVERGENCE
    code, out, _ = call(["verify", "--id", "SC_Z5"], env={"LM_DEFAULT_TOL": "1e-4"})
    assert code == EXIT_OK and json.loads(out)["records"][0]["tol"] == 1e-4
    # an explicit flag wins over the environment
    code, _, _ = call(["verify", "--id", "SC_Z5", "--tol", "1e-6"], env={"LM_DEFAULT_TOL": "1e-30"})
    assert code == EXIT_OK
    code, _, err = call(["verify", "--id", "SC_Z5"], env={"LM_DEFAULT_TOL": "abc"})
    assert code == EXIT_USAGE and "LM_DEFAULT_TOL" in err


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nformat = json\n--tol = 1e-5\nprofile = quick\n"
                   "tol-override = K04=1e-3\n")
    code, out, _ = call(["verify", "--id", "SC_Z5", "--config", str(cfg)])
    assert code == EXIT_OK
    assert json.loads(out)["records"][0]["tol"] == 1e-5
    code, out, _ = call(["verify", "--id", "SC_Z5", "--tol", "1e-7", "--config", str(cfg)])
    assert json.loads(out)["records"][0]["tol"] == 1e-7


def test_read_config_errors(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("colour = red\n")
    with pytest.raises(UsageError):
        read_config(str(p))
    p.write_text("just words\n")
    with pytest.raises(UsageError):
        read_config(str(p))
    p.write_text("tol = -1\n")
    with pytest.raises(UsageError):
        read_config(str(p))
    with pytest.raises(UsageError):
        read_config(str(tmp_path / "absent.cfg"))
    assert call(["verify", "--id", "SC_Z5", "--config", str(p)])[0] == EXIT_USAGE
    p.write_text("tol-override = A=1e-3\ntol_override = B=1e-2\n")
    assert read_config(str(p)) == {"tol_override": [("A", 1e-3), ("B", 1e-2)]}


# ------------------------------------------------------------ RunConfig

def test_run_config_defaults_and_validation():
    c = RunConfig()
    assert (c.profile, c.format, c.parallelism) == ("quick", "text", 1)
    assert RunConfig(tol_overrides={"k04": 1e-3}).tol_overrides == {"K04": 1e-3}
    for kw in ({"profile": "slow"}, {"format": "xml"}, {"parallelism": 0},
               {"parallelism": 1.5}, {"parallelism": True}, {"tol_overrides": {"NOPE": 1e-3}},
               {"tol_overrides": {"A": -1.0}}):
        with pytest.raises(UsageError):
            RunConfig(**kw)


def test_parse_degree():
    assert parse_degree("0.25") == 0.25
    assert parse_degree("-0.3,0.2") == complex(-0.3, 0.2)
    assert parse_degree(" 1e-3 , -2 ") == complex(1e-3, -2)
    assert isinstance(parse_degree("1,0"), float)


def _doc(records):
    return make_document(records, "quick", {"A": 1e-8}, "2026-01-01T00:00:00+00:00", 0.5)


def test_emit_report_deterministic(tmp_path):
    recs = [VerificationRecord.build("A", {"nu": 0.37}, 0.3, 0.3 + 1e-10, 1e-8, 12, 0.1)]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    emit_report(_doc(recs), RunConfig(format="json", output_path=str(a)))
    emit_report(_doc(recs), RunConfig(format="json", output_path=str(b)))
    assert a.read_bytes() == b.read_bytes()
    buf = io.StringIO()
    emit_report(_doc([]), RunConfig(format="json"), buf)
    assert json.loads(buf.getvalue())["records"] == []


def test_exit_code_rule():
    ok = VerificationRecord.build("A", {}, 1.0, 1.0, 1e-8)
    bad = VerificationRecord.build("A", {"nu": 1}, 1.0, 2.0, 1e-8)
    nc = VerificationRecord.build("B", {}, 1.0, 1.0, 1e-8, converged=False)
    assert exit_code(_doc([ok])) == EXIT_OK
    assert exit_code(_doc([ok, bad])) == EXIT_FAIL
    assert exit_code(_doc([bad, nc])) == EXIT_NO_CONVERGENCE
    assert exit_code(_doc([])) == EXIT_OK


# ----------------------------------------------------- exit-code property

VALID = {
    "SC_Z5": {},
    "K04": {},
    "PQ_T": {"n": ["0", "1", "3"], "x": ["-0.7", "0.3", "0.55"]},
    "NEUMANN": {"n": ["1", "2", "4"], "x": ["-0.2", "0.8"]},
    "SIN2COT": {"nu": ["0.3", "1.2", "0.45"]},
    "P3P": {"nu": ["0.3", "-0.25", "1.7"]},
    "PNQN0": {"n": ["0", "2", "4"]},
}
INVALID = ["unknown_flag", "bad_tol", "bad_id", "foreign_param", "bad_format", "bad_value"]


@st.composite
def command_lines(draw):
    id_ = draw(st.sampled_from(sorted(VALID)))
    shown = draw(st.sampled_from([id_, id_.lower(), id_.title()]))
    argv = ["verify", "--id", shown]
    for name, choices in VALID[id_].items():
        argv += [f"--{name}", draw(st.sampled_from(choices))]
    if draw(st.booleans()):
        argv += ["--format", draw(st.sampled_from(["json", "csv", "text"]))]
    tol = draw(st.sampled_from([None, "1e-6", "1e-30"]))
    expected = EXIT_OK
    if tol is not None:
        argv += ["--tol", tol]
        if tol == "1e-30":
            expected = EXIT_NO_CONVERGENCE
    fault = draw(st.sampled_from([None] * 3 + INVALID))
    if fault == "unknown_flag":
        argv.insert(draw(st.integers(1, len(argv))), "--" + draw(st.sampled_from(["bogus", "nus", "tolerance"])))
    elif fault == "bad_tol":
        argv += ["--tol", draw(st.sampled_from(["0", "-1e-3", "abc", "inf", "nan"]))]
    elif fault == "bad_id":
        argv[2] = draw(st.sampled_from(["NOPE", "A_", "SC-Z5", ""]))
    elif fault == "foreign_param":
        foreign = [p for p in ("nu", "n", "x", "mu") if p not in VALID[id_]]
        argv += [f"--{draw(st.sampled_from(foreign))}", "2"]
    elif fault == "bad_format":
        argv += ["--format", "xml"]
    elif fault == "bad_value":
        argv += ["--n" if "n" in VALID[id_] else "--nu", "x1"]
    if fault is not None:
        expected = EXIT_USAGE
    return argv, expected


@given(case=command_lines())
def test_exit_code_contract(case):
    argv, expected = case
    code, out, err = call(argv)
    assert code == expected, (argv, err)
    if expected in (EXIT_OK, EXIT_NO_CONVERGENCE):
        assert out
    if expected == EXIT_USAGE:
        assert out == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "legmoments", "verify", "--id", "SC_Z5"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["records"][0]["pass"] is True
    proc = subprocess.run([sys.executable, "-m", "legmoments", "--bogus"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == EXIT_USAGE and "usage" in proc.stderr
