"""Evaluation of catalog entries into verification records and reports."""
from __future__ import annotations

import datetime as _dt
import math
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..errors import DomainError, LegMomentsError, UnknownIdentityError
from ..quadrature import QuadResult
from ..report import ReportDocument, VerificationRecord
from ..special.core import SpecialValue
from .catalog import CATALOG, get_spec, normalize_params

PROFILES = ("quick", "full")
# no double-precision evaluation can meet a relative tolerance below this
TOL_FLOOR = 4 * 2.220446049250313e-16

_X_GRID = (-0.7, -0.2, 0.3, 0.8)

QUICK_GRID: dict[str, list[dict]] = {
    "A": [{"nu": -0.25}, {"nu": 0.37}],
    "B": [{"nu": -1.0 / 3.0}, {"nu": complex(0.8, 0.4)}],
    "SC_Z3_6": [{}], "SC_Z3_4": [{}], "SC_Z3_3": [{}], "SC_Z5": [{}],
    "SC_LOG3": [{}], "SC_LOG2": [{}], "SC_LOG23": [{}], "SC_Z3H": [{}],
    "P3P": [{"nu": 0.3}],
    "PQQQ0": [{"n": 2}],
    "TRICOMI_PP": [{"nu": 0.3, "x": 0.3}],
    "TRICOMI_XPP": [{"nu": -0.25, "x": 0.8}],
    "PP_INT": [{"nu": 0.25}],
    "PQ_T": [{"n": 2, "x": 0.3}],
    "XPQ_T": [{"n": 1, "x": -0.7}],
    "NEUMANN": [{"n": 3, "x": 0.3}],
    "PNQN0": [{"n": 2}],
    "JY3": [{}], "J3Y": [{}], "J4_3J2Y2": [{}], "J4_6J2Y2_Y4": [{}], "K04": [{}],
    "J2Y2_COS": [{}], "IK_EXP": [{}],
    "IIKK": [{"nu": 1.0}],
    "WATSON_IK": [{"nu": 0.5, "y": 1.0}],
    "WEBER": [{"mu": 1.5, "a": 2.0, "b": 1.0}, {"mu": 1.5, "a": 1.0, "b": 2.0}],
    "PRUD": [{"nu": 0.5, "b": 1.0, "c": 2.0}],
    "SIN2COT": [{"nu": 0.3}],
}

FULL_GRID: dict[str, list[dict]] = {
    "A": [{"nu": v} for v in (-1.0 / 6.0, -0.25, -1.0 / 3.0, 0.37, 2.6, complex(1.3, 0.7))],
    "B": [{"nu": v} for v in (-1.0 / 6.0, -0.25, -1.0 / 3.0, 0.37, 2.6, complex(0.8, 0.4))],
    "SC_Z3_6": [{}], "SC_Z3_4": [{}], "SC_Z3_3": [{}], "SC_Z5": [{}],
    "SC_LOG3": [{}], "SC_LOG2": [{}], "SC_LOG23": [{}], "SC_Z3H": [{}],
    "P3P": [{"nu": v} for v in (0.3, -0.25, 1.7, -1.0 / 6.0, 2.2)],
    "PQQQ0": [{"n": n} for n in range(5)],
    "TRICOMI_PP": [{"nu": v, "x": x} for v in (0.3, -0.25) for x in (-0.7, 0.3, 0.8)],
    "TRICOMI_XPP": [{"nu": v, "x": x} for v in (0.3, -0.25) for x in (-0.7, 0.3, 0.8)],
    "PP_INT": [{"nu": v} for v in (0.25, -1.0 / 6.0, 1.3, 2.7)],
    "PQ_T": [{"n": n, "x": x} for n in range(5) for x in _X_GRID],
    "XPQ_T": [{"n": n, "x": x} for n in range(5) for x in _X_GRID],
    "NEUMANN": [{"n": n, "x": x} for n in range(5) for x in _X_GRID],
    "PNQN0": [{"n": n} for n in range(5)],
    "JY3": [{}], "J3Y": [{}], "J4_3J2Y2": [{}], "J4_6J2Y2_Y4": [{}], "K04": [{}],
    "J2Y2_COS": [{}], "IK_EXP": [{}],
    "IIKK": [{"nu": v} for v in (0.25, 1.0, 2.5)],
    "WATSON_IK": [{"nu": 0.5, "y": 1.0}, {"nu": 1.0, "y": 2.0}],
    "WEBER": [{"mu": 1.5, "a": 2.0, "b": 1.0}, {"mu": 1.5, "a": 1.0, "b": 2.0}],
    "PRUD": [{"nu": 0.5, "b": 1.0, "c": 2.0}, {"nu": 0.5, "b": 2.0, "c": 1.0}],
    "SIN2COT": [{"nu": v} for v in (0.3, 1.2)],
}


def _side_error(v) -> float:
    return v.err_est if isinstance(v, QuadResult) else float(np.max(v.abs_err))


def _side_value(v) -> complex:
    return complex(v.value)


def eval_side(id: str, side: str, params: dict | None = None,
              tol: float | None = None) -> QuadResult | SpecialValue:
    """Numeric value of one side of a catalog identity.

    Parameters
    ----------
    id : str
        Catalog key (case-insensitive).
    side : {"LHS", "RHS"}
    params : dict, optional
        Missing parameters take the entry's defaults.
    tol : float, optional
        Identity tolerance; quadratures aim at a tenth of it.

    Raises
    ------
    UnknownIdentityError, DomainError
        Unknown id or parameters outside the domain.
    """
    spec = get_spec(id)
    p = normalize_params(spec, params)
    tol = spec.default_tol if tol is None else float(tol)
    key = str(side).strip().upper()
    if key == "LHS":
        return spec.lhs(p, tol)
    if key == "RHS":
        return spec.rhs(p, tol)
    raise DomainError(f"side must be LHS or RHS, got {side!r}")


def verify(id: str, params: dict | None = None, tol: float | None = None) -> VerificationRecord:
    """Evaluate both sides and compare.

    Evaluation errors never escape: they come back as a failed record with
    NaN sides and a diagnostic. Unknown ids and out-of-domain parameters are
    caller errors and do raise.
    """
    spec = get_spec(id)
    p = normalize_params(spec, params)
    tol = spec.default_tol if tol is None else float(tol)
    if not tol > 0:
        raise DomainError("tol must be positive")
    t0 = time.perf_counter()
    try:
        lhs = spec.lhs(p, tol)
        rhs = spec.rhs(p, tol)
    except LegMomentsError as e:
        return VerificationRecord.build(spec.id, p, math.nan, math.nan, tol, 0,
                                        time.perf_counter() - t0,
                                        diagnostic=f"{type(e).__name__}: {e}", converged=False)
    except (ArithmeticError, ValueError, FloatingPointError) as e:
        return VerificationRecord.build(spec.id, p, math.nan, math.nan, tol, 0,
                                        time.perf_counter() - t0,
                                        diagnostic=f"{type(e).__name__}: {e}", converged=False)
    elapsed = time.perf_counter() - t0
    n_evals = sum(v.n_evals for v in (lhs, rhs) if isinstance(v, QuadResult))
    lv, rv = _side_value(lhs), _side_value(rhs)
    notes = []
    converged = True
    if isinstance(lhs, QuadResult) and not lhs.converged:
        converged = False
        notes.append(f"quadrature did not converge (error estimate {lhs.err_est:.1e})")
    if tol < TOL_FLOOR:
        converged = False
        notes.append(f"tolerance {tol:g} is below double-precision resolution")
    if not (np.isfinite(lv) and np.isfinite(rv)):
        converged = False
        notes.append("non-finite side value")
    rec = VerificationRecord.build(spec.id, p, lv, rv, tol, n_evals, elapsed,
                                   diagnostic="; ".join(notes) or None, converged=converged)
    if not rec.passed and rec.diagnostic is None:
        est = _side_error(lhs) + _side_error(rhs)
        rec = VerificationRecord.build(spec.id, p, lv, rv, tol, n_evals, elapsed,
                                       diagnostic=f"mismatch; combined error estimate {est:.1e}")
    return rec


def _verify_task(args):
    id_, params, tol = args
    return verify(id_, params, tol)


def resolve_tolerances(tol_overrides: dict | None, ids) -> dict[str, float]:
    """Per-id tolerance: override if given, otherwise the catalog default."""
    overrides = {}
    for k, v in (tol_overrides or {}).items():
        spec = get_spec(k)
        v = float(v)
        if not v > 0:
            raise DomainError(f"tolerance for {spec.id} must be positive")
        overrides[spec.id] = v
    return {i: overrides.get(i, CATALOG[i].default_tol) for i in ids}


def suite_tasks(profile: str, tolerances: dict | None = None,
                seed: int | None = None) -> list[tuple[str, dict, float]]:
    """The (id, params, tol) triples a suite run evaluates.

    With a ``seed``, pointwise x-values are jittered by up to 1e-3 so that
    repeated runs probe nearby points reproducibly.
    """
    if profile not in PROFILES:
        raise DomainError(f"profile must be one of {PROFILES}, got {profile!r}")
    grid = QUICK_GRID if profile == "quick" else FULL_GRID
    tolerances = tolerances or resolve_tolerances(None, grid)
    rng = np.random.default_rng(seed) if seed is not None else None
    tasks = []
    for id_, points in grid.items():
        for p in points:
            p = dict(p)
            if rng is not None and "x" in p:
                p["x"] = float(p["x"] + rng.uniform(-1e-3, 1e-3))
            tasks.append((id_, p, tolerances[id_]))
    return tasks


def now_utc() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def run_tasks(tasks, parallelism: int = 1) -> list[VerificationRecord]:
    if parallelism < 1:
        raise DomainError("parallelism must be >= 1")
    if parallelism == 1 or len(tasks) < 2:
        return [_verify_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(_verify_task, tasks))


def make_document(records, profile: str, tolerances: dict, started_at: str,
                  wall_seconds: float) -> ReportDocument:
    from .. import __version__
    meta = {"version": __version__, "profile": profile, "tolerances": dict(sorted(tolerances.items())),
            "started_at": started_at, "wall_seconds": float(wall_seconds)}
    return ReportDocument(meta, list(records))


def verify_suite(profile: str = "quick", tol_overrides: dict | None = None,
                 parallelism: int = 1, seed: int | None = None) -> ReportDocument:
    """Run the fixed parameter grid of a profile and collect a report.

    ``quick`` checks one or two points per identity; ``full`` runs the
    complete acceptance grids. Failures are recorded, never raised.
    """
    if profile not in PROFILES:
        raise DomainError(f"profile must be one of {PROFILES}, got {profile!r}")
    grid = QUICK_GRID if profile == "quick" else FULL_GRID
    tolerances = resolve_tolerances(tol_overrides, grid)
    started = now_utc()
    t0 = time.perf_counter()
    records = run_tasks(suite_tasks(profile, tolerances, seed), parallelism)
    return make_document(records, profile, tolerances, started, time.perf_counter() - t0)


__all__ = ["PROFILES", "QUICK_GRID", "FULL_GRID", "eval_side", "verify", "verify_suite",
           "resolve_tolerances", "suite_tasks", "now_utc", "run_tasks", "make_document",
           "UnknownIdentityError"]
