"""Verification records, report documents and their serialisations.

JSON output is byte-stable: keys are sorted, every float is written with 17
significant digits and NaN/inf become ``null``. The CSV form has one row per
record with the same column names as the JSON record objects.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

RECORD_COLUMNS = ("id", "params", "lhs", "rhs", "abs_diff", "rel_diff", "tol", "pass",
                  "n_evals", "elapsed")
META_FIELDS = ("version", "profile", "tolerances", "started_at", "wall_seconds")


def passes(abs_diff: float, lhs: complex, rhs: complex, tol: float) -> bool:
    """The acceptance rule ``abs_diff <= max(tol, tol * max(|lhs|, |rhs|))``.

    A non-finite difference never passes.
    """
    if not math.isfinite(abs_diff):
        return False
    return bool(abs_diff <= max(tol, tol * max(_cabs(lhs), _cabs(rhs))))


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of checking one identity at one parameter point.

    ``diagnostic`` and ``converged`` describe how the numbers were obtained;
    they are kept in memory for exit-code decisions and are not serialised.
    """

    id: str
    params: dict
    lhs: complex
    rhs: complex
    abs_diff: float
    rel_diff: float
    tol: float
    passed: bool
    n_evals: int
    elapsed: float
    diagnostic: str | None = field(default=None, compare=False)
    converged: bool = field(default=True, compare=False)

    @classmethod
    def build(cls, id: str, params: dict, lhs, rhs, tol: float, n_evals: int = 0,
              elapsed: float = 0.0, diagnostic: str | None = None,
              converged: bool = True) -> "VerificationRecord":
        """Fill the derived fields so that the record invariants hold."""
        lhs = complex(lhs)
        rhs = complex(rhs)
        d = _cabs(lhs - rhs)
        scale = max(_cabs(lhs), _cabs(rhs))
        rel = d / scale if scale > 0 else (0.0 if d == 0 else math.inf)
        return cls(id, dict(params), lhs, rhs, d, rel, float(tol), passes(d, lhs, rhs, tol),
                   int(n_evals), float(elapsed), diagnostic, bool(converged))

    def sort_key(self):
        # the serialised record breaks ties so assembly order never leaks out
        return (self.id, _params_key(self.params), dumps(self.to_dict(), indent=None))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": {k: _param_out(v) for k, v in self.params.items()},
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "tol": self.tol,
            "pass": self.passed,
            "n_evals": self.n_evals,
            "elapsed": self.elapsed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        return cls(
            id=d["id"],
            params={k: _param_in(v) for k, v in d["params"].items()},
            lhs=_complex_in(d["lhs"]),
            rhs=_complex_in(d["rhs"]),
            abs_diff=_float_in(d["abs_diff"]),
            rel_diff=_float_in(d["rel_diff"]),
            tol=_float_in(d["tol"]),
            passed=bool(d["pass"]),
            n_evals=int(d["n_evals"]),
            elapsed=_float_in(d["elapsed"]),
        )


def _cabs(z: complex) -> float:
    try:
        return abs(z)
    except OverflowError:
        return math.inf


def _params_key(params: dict):
    out = []
    for k in sorted(params):
        v = params[k]
        if isinstance(v, complex):
            out.append((k, v.real, v.imag))
        else:
            out.append((k, float(v), 0.0))
    return tuple(out)


def _param_out(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _param_in(v):
    if isinstance(v, list):
        return complex(_float_in(v[0]), _float_in(v[1]))
    if isinstance(v, float) or v is None:
        return _float_in(v)
    return v


def _float_in(v) -> float:
    return math.nan if v is None else float(v)


def _complex_in(v) -> complex:
    return complex(_float_in(v[0]), _float_in(v[1]))


@dataclass
class ReportDocument:
    """Run metadata plus records, kept sorted by id and then parameters."""

    meta: dict
    records: list = field(default_factory=list)

    def __post_init__(self):
        self.records = sorted(self.records, key=VerificationRecord.sort_key)

    @property
    def n_passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def n_failed(self) -> int:
        return len(self.records) - self.n_passed

    @property
    def all_converged(self) -> bool:
        return all(r.converged for r in self.records)

    def to_dict(self) -> dict:
        return {"meta": {k: self.meta.get(k) for k in META_FIELDS},
                "records": [r.to_dict() for r in self.records]}

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        meta = dict(d["meta"])
        if meta.get("wall_seconds") is not None:
            meta["wall_seconds"] = float(meta["wall_seconds"])
        if meta.get("tolerances"):
            meta["tolerances"] = {k: _float_in(v) for k, v in meta["tolerances"].items()}
        return cls(meta, [VerificationRecord.from_dict(r) for r in d["records"]])

    def to_json(self) -> str:
        return dumps(self.to_dict()) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(RECORD_COLUMNS)
        for r in self.records:
            d = r.to_dict()
            row = []
            for col in RECORD_COLUMNS:
                v = d[col]
                if isinstance(v, (dict, list)):
                    row.append(dumps(v, indent=None))
                elif isinstance(v, bool):
                    row.append("true" if v else "false")
                elif isinstance(v, float):
                    row.append(_fmt_float(v))
                else:
                    row.append(str(v))
            w.writerow(row)
        return buf.getvalue()

    def to_text(self) -> str:
        rows = [("id", "params", "lhs", "rhs", "abs_diff", "tol", "result")]
        for r in self.records:
            rows.append((
                r.id,
                ", ".join(f"{k}={_short(v)}" for k, v in sorted(r.params.items())) or "-",
                _short(r.lhs),
                _short(r.rhs),
                f"{r.abs_diff:.2e}",
                f"{r.tol:.0e}",
                ("PASS" if r.passed else "FAIL") + ("" if r.converged else " (no conv.)"),
            ))
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append("")
        lines.append(f"{len(self.records)} records, {self.n_passed} passed, {self.n_failed} failed"
                     f" (profile {self.meta.get('profile')}, {self.meta.get('wall_seconds', 0.0):.1f} s)")
        for r in self.records:
            if r.diagnostic:
                lines.append(f"  {r.id} {_short_params(r.params)}: {r.diagnostic}")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, complex):
        if v.imag == 0.0:
            return f"{v.real:.12g}"
        return f"{v.real:.12g}{v.imag:+.12g}i"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _short_params(params: dict) -> str:
    return "(" + ", ".join(f"{k}={_short(v)}" for k, v in sorted(params.items())) + ")"


# ------------------------------------------------------------ JSON writer

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    # signed zero would not survive a JSON round trip
    return format(x + 0.0, ".17g")


def dumps(obj, indent: int | None = 2) -> str:
    """Deterministic JSON: sorted keys, 17-digit floats, non-finite as null."""
    out: list[str] = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def _emit(obj, out: list, indent, level: int):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _emit_seq([(json.dumps(str(k)), obj[k]) for k in sorted(obj)], "{", "}", out, indent, level)
    elif isinstance(obj, (list, tuple)):
        _emit_seq([(None, v) for v in obj], "[", "]", out, indent, level)
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit_seq(items, open_, close, out, indent, level):
    if not items:
        out.append(open_ + close)
        return
    # short numeric lists (complex pairs) stay on one line
    inline = indent is None or (open_ == "[" and all(not isinstance(v, (dict, list)) for _, v in items))
    sep = ", " if inline else ","
    out.append(open_)
    for i, (k, v) in enumerate(items):
        if i:
            out.append(sep)
        if not inline:
            out.append("\n" + " " * (indent * (level + 1)))
        if k is not None:
            out.append(k + ": ")
        _emit(v, out, indent, level + 1)
    if not inline:
        out.append("\n" + " " * (indent * level))
    out.append(close)
