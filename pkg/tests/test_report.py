import csv
import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from legmoments.report import (
    META_FIELDS, RECORD_COLUMNS, ReportDocument, VerificationRecord, dumps, passes,
)

finite = st.floats(-1e300, 1e300)
cplx = st.builds(complex, finite, finite)
param_val = st.one_of(st.integers(-5, 5), finite, cplx)
params = st.dictionaries(st.sampled_from(["nu", "x", "n", "a", "b"]), param_val, max_size=3)


@st.composite
def records(draw):
    lhs = draw(cplx)
    rhs = draw(cplx)
    tol = draw(st.floats(1e-15, 1.0))
    rid = draw(st.sampled_from(["A", "B", "K04", "WEBER", "TRICOMI_PP"]))
    return VerificationRecord.build(rid, draw(params), lhs, rhs, tol,
                                    draw(st.integers(0, 10 ** 6)),
                                    draw(st.floats(0.0, 100.0)))


def _meta(**kw):
    m = {"version": "0.1.0", "profile": "quick", "tolerances": {"A": 1e-8},
         "started_at": "2026-01-01T00:00:00+00:00", "wall_seconds": 1.5}
    m.update(kw)
    return m


@given(recs=st.lists(records(), max_size=6))
def test_json_round_trip(recs):
    doc = ReportDocument(_meta(), recs)
    text = doc.to_json()
    back = ReportDocument.from_json(text)
    assert back.records == doc.records
    assert back.meta == doc.meta
    assert back.to_json() == text


@given(recs=st.lists(records(), max_size=6))
def test_records_sorted_and_order_independent(recs):
    a = ReportDocument(_meta(), recs)
    b = ReportDocument(_meta(), list(reversed(recs)))
    keys = [r.sort_key() for r in a.records]
    assert keys == sorted(keys)
    assert a.to_json() == b.to_json()


@given(rec=records())
def test_record_invariants(rec):
    assert rec.abs_diff == abs(rec.lhs - rec.rhs)
    rule = rec.abs_diff <= max(rec.tol, rec.tol * max(abs(rec.lhs), abs(rec.rhs)))
    assert rec.passed == (math.isfinite(rec.abs_diff) and rule)


def test_byte_stable():
    r = VerificationRecord.build("A", {"nu": 0.1}, 0.1, 0.1 + 1e-12, 1e-8, 10, 0.25)
    doc = ReportDocument(_meta(), [r])
    assert doc.to_json() == ReportDocument(_meta(), [r]).to_json()
    assert '"lhs": [0.10000000000000001, 0]' in doc.to_json()


def test_empty_report():
    doc = ReportDocument(_meta(), [])
    d = json.loads(doc.to_json())
    assert d["records"] == []
    assert set(d["meta"]) == set(META_FIELDS)
    assert doc.to_csv().strip() == ",".join(RECORD_COLUMNS)
    assert "0 records" in doc.to_text()
    assert doc.all_converged and doc.n_failed == 0


def test_json_schema_fields():
    r = VerificationRecord.build("B", {"nu": complex(0.8, 0.4)}, 1 + 2j, 1 + 2j, 1e-7)
    d = json.loads(ReportDocument(_meta(), [r]).to_json())
    rec = d["records"][0]
    assert tuple(rec) == tuple(sorted(RECORD_COLUMNS))
    assert rec["params"]["nu"] == [0.8, 0.4]
    assert rec["lhs"] == [1.0, 2.0]
    assert rec["pass"] is True


def test_csv_rows_and_header():
    recs = [VerificationRecord.build("A", {"nu": v}, v, v, 1e-8) for v in (0.1, 0.2, 0.3)]
    text = ReportDocument(_meta(), recs).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == RECORD_COLUMNS
    assert len(rows) == 4
    assert rows[1][RECORD_COLUMNS.index("pass")] == "true"
    assert json.loads(rows[1][RECORD_COLUMNS.index("params")]) == {"nu": 0.1}


def test_non_finite_written_as_null():
    r = VerificationRecord.build("A", {"nu": 0.1}, math.nan, 1.0, 1e-8, diagnostic="boom",
                                 converged=False)
    doc = ReportDocument(_meta(wall_seconds=math.inf), [r])
    d = json.loads(doc.to_json())
    assert d["records"][0]["lhs"][0] is None
    assert d["records"][0]["abs_diff"] is None
    assert d["meta"]["wall_seconds"] is None
    assert d["records"][0]["pass"] is False
    assert "null" in doc.to_csv()
    back = ReportDocument.from_json(doc.to_json())
    assert math.isnan(back.records[0].lhs.real)
    assert not doc.all_converged


def test_diagnostics_not_serialised():
    r = VerificationRecord.build("A", {}, 1.0, 2.0, 1e-8, diagnostic="note", converged=False)
    assert "note" not in ReportDocument(_meta(), [r]).to_json()
    assert "note" in ReportDocument(_meta(), [r]).to_text()


def test_text_summary():
    recs = [VerificationRecord.build("A", {"nu": 0.37}, 1.0, 1.0, 1e-8),
            VerificationRecord.build("B", {"nu": 0.37}, 1.0, 2.0, 1e-8)]
    text = ReportDocument(_meta(), recs).to_text()
    lines = text.splitlines()
    assert lines[0].split()[0] == "id"
    assert "PASS" in lines[2] and "FAIL" in lines[3]
    assert "2 records, 1 passed, 1 failed" in text


def test_passes_rule():
    assert passes(1e-8, 1.0, 1.0, 1e-8)
    assert not passes(2e-8, 1.0, 1.0, 1e-8)
    assert passes(2e-8, 2.0, 1.0, 1e-8)
    assert passes(0.0, 0.0, 0.0, 0.0)


def test_dumps_rejects_unknown_types():
    with pytest.raises(TypeError):
        dumps({"a": object()})
    assert dumps({"b": 1, "a": [1.5, True, None]}, indent=None) == '{"a": [1.5, true, null], "b": 1}'


def test_overflowing_values_give_infinite_difference():
    r = VerificationRecord.build("A", {}, complex(1e308, 1e308), complex(-1e308, 0.0), 1e-8)
    assert r.abs_diff == math.inf and not r.passed
