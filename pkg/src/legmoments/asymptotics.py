"""Large-degree and near-integer behaviour of the Legendre moments.

* Hansen-Heine: ``P_nu(cos t) ~ sqrt(t/sin t) J0((2nu+1)t/2)`` and
  ``Q_nu(cos t) ~ -(pi/2) sqrt(t/sin t) Y0((2nu+1)t/2)`` on ``(0, pi/2]``.
  ``hansen_heine_residual`` measures the worst deviation on a grid and
  ``hansen_heine_rate`` fits its decay in ``2nu+1``.
* Scaled moments: on ``nu = N + 1/4``,
  ``(2nu+1)^2 A_L / sin^4(nu pi)`` tends to
  ``4 [14 zeta(3)/pi^4 + cos(nu pi)/(pi sin^3(nu pi))]`` and
  ``(2nu+1)^2 B_L / sin^2(nu pi)`` to
  ``2 cot(nu pi)/pi + 4 (gamma + 2 log 2 + log nu)/pi^2``.
  ``moment_residual`` returns the distance of the quadrature value from
  that limit; ``moment_decay`` fits its rate.
* Near an integer n, ``g(nu) = (2nu+1)^2 A(nu)`` starts as
  ``4(nu-n) - (8 pi^2/3)(nu-n)^3`` and ``(2nu+1)^2 B(nu)`` as
  ``2(nu-n) + 4(H_n + 2 log 2)(nu-n)^2 + ...``; ``taylor_check`` fits
  the first three derivatives of g from quadrature values.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .identities.closed_forms import a_right, b_right
from .identities.moments import a_left, b_left
from .report import VerificationRecord
from .special.bessel import jy
from .special.core import EULER_GAMMA, LOG2, ZETA3, Degree, cospi, sinpi
from .special.legendre import legendre_pair
from .special.polygamma import trigamma

_PI = math.pi

HH_DEGREES = (5.25, 10.25, 20.25, 40.25)
HH_WINDOW = (-1.3, -0.8)
MOMENT_ORDERS = (4, 8, 16, 32)
MOMENT_THRESHOLD = -0.4
THETA_MIN = 1e-3
# quadrature accuracy behind every finite difference
_TAYLOR_QUAD_TOL = 1e-14


@dataclass(frozen=True)
class DecayFit:
    """Least-squares power law ``residual ~ exp(intercept) * scale**exponent``.

    ``points`` are ``(scale, residual)`` pairs sorted by scale; ``r_squared``
    is the coefficient of determination of the log-log fit over them.
    """

    exponent: float
    intercept: float
    r_squared: float
    points: tuple


def fit_decay(scales, residuals) -> DecayFit:
    """Fit ``log residual = intercept + exponent * log scale``.

    Raises
    ------
    DomainError
        Fewer than four points, a non-positive residual or scale, or all
        scales equal.
    """
    s = np.asarray(scales, dtype=float).ravel()
    r = np.asarray(residuals, dtype=float).ravel()
    if s.size != r.size:
        raise DomainError("scales and residuals differ in length")
    if s.size < 4:
        raise DomainError("fit_decay needs at least 4 points")
    if not (np.all(np.isfinite(r)) and np.all(r > 0)):
        raise DomainError("residuals must be finite and positive")
    if not (np.all(np.isfinite(s)) and np.all(s > 0)):
        raise DomainError("scales must be finite and positive")
    order = np.argsort(s, kind="stable")
    s, r = s[order], r[order]
    if np.ptp(s) == 0:
        raise DomainError("scales are all equal")
    lx, ly = np.log(s), np.log(r)
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, ly, rcond=None)
    pred = slope * lx + icpt
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    r2 = min(1.0, max(0.0, r2))
    return DecayFit(float(slope), float(icpt), r2,
                    tuple((float(a), float(b)) for a, b in zip(s, r)))


# ----------------------------------------------------------- Hansen-Heine

def theta_grid(n: int = 40) -> np.ndarray:
    """``n`` equispaced angles on ``[1e-3, pi/2]``."""
    if n < 1:
        raise DomainError("grid needs at least one point")
    return np.linspace(THETA_MIN, 0.5 * _PI, n)


def hansen_heine_residual(nu, theta=None, kind: str = "P") -> float:
    """``max_t |F_nu(cos t) - approx(t)|`` over the grid.

    Parameters
    ----------
    nu : real, >= 2
    theta : array_like, optional
        Angles in ``(0, pi/2]``; defaults to ``theta_grid(40)``.
    kind : {"P", "Q"}
        ``P`` against ``sqrt(t/sin t) J0((2nu+1)t/2)``, ``Q`` against
        ``-(pi/2) sqrt(t/sin t) Y0((2nu+1)t/2)``.
    """
    d = Degree.of(nu)
    if not d.is_real or d.re < 2.0:
        raise DomainError("hansen_heine_residual needs real nu >= 2")
    t = theta_grid() if theta is None else np.asarray(theta, dtype=float).ravel()
    if t.size == 0:
        raise DomainError("theta grid is empty")
    if np.any(~(t > 0)) or np.any(t > 0.5 * _PI + 1e-15):
        raise DomainError("theta must lie in (0, pi/2]")
    kind = kind.upper()
    if kind not in ("P", "Q"):
        raise DomainError("kind must be 'P' or 'Q'")
    z = np.clip(np.sin(0.5 * t) ** 2, 1e-300, 0.5)
    pair = legendre_pair(d.re, z)
    w = np.sqrt(t / np.sin(t))
    j0, y0, _ = jy(0.0, (d.re + 0.5) * t)
    if kind == "P":
        diff = pair.p_pos.real - w * j0
    else:
        diff = pair.q_pos.real + 0.5 * _PI * w * y0
    return float(np.max(np.abs(diff)))


def hansen_heine_rate(nus=HH_DEGREES, kind: str = "P", n_theta: int = 40) -> DecayFit:
    """Decay of the Hansen-Heine residual against ``2nu+1``."""
    grid = theta_grid(n_theta)
    res = [hansen_heine_residual(v, grid, kind) for v in nus]
    return fit_decay([2.0 * v + 1.0 for v in nus], res)


# ------------------------------------------------------- moment residuals

def a_limit(nu: float) -> float:
    """Large-degree limit of ``(2nu+1)^2 A / sin^4(nu pi)``."""
    s, c = sinpi(nu), cospi(nu)
    return 4.0 * (14.0 * ZETA3 / _PI ** 4 + c / (_PI * s ** 3))


def b_limit(nu: float) -> float:
    """Large-degree limit of ``(2nu+1)^2 B / sin^2(nu pi)``."""
    s, c = sinpi(nu), cospi(nu)
    return 2.0 * c / (_PI * s) + 4.0 * (EULER_GAMMA + 2.0 * LOG2 + math.log(nu)) / _PI ** 2


def sample_degree(N: int) -> float:
    """The sampling line ``nu = (1 + 4N)/4``."""
    return (1.0 + 4.0 * N) / 4.0


@dataclass(frozen=True)
class MomentSample:
    """One point of the scaled-moment decay study."""

    N: int
    nu: float
    scaled: float
    limit: float
    residual: float
    identity_gap: float


def moment_residual(which: str, N: int, tol: float = 1e-13) -> MomentSample:
    """Scaled quadrature moment minus its large-degree limit at ``nu = N + 1/4``.

    ``identity_gap`` is ``|L - R|`` for the unscaled moment against its
    closed form at the same degree.
    """
    which = which.upper()
    if which not in ("A", "B"):
        raise DomainError("which must be 'A' or 'B'")
    if N < 1:
        raise DomainError("N must be a positive integer")
    nu = sample_degree(N)
    s = sinpi(nu)
    if which == "A":
        left = a_left(nu, tol).value
        right = a_right(nu).value
        k = (2.0 * nu + 1.0) ** 2 / s ** 4
        lim = a_limit(nu)
    else:
        left = b_left(nu, tol).value
        right = b_right(nu).value
        k = (2.0 * nu + 1.0) ** 2 / s ** 2
        lim = b_limit(nu)
    scaled = k * float(np.real(left))
    return MomentSample(N, nu, scaled, lim, abs(scaled - lim), abs(complex(left) - complex(right)))


def moment_decay(which: str, orders=MOMENT_ORDERS) -> tuple[DecayFit, list[MomentSample]]:
    """Fit the decay of ``moment_residual`` against ``2nu+1``."""
    samples = [moment_residual(which, N) for N in orders]
    fit = fit_decay([2.0 * s.nu + 1.0 for s in samples], [s.residual for s in samples])
    return fit, samples


# ----------------------------------------------------------- Taylor data

_STENCILS = {
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
}


def richardson_derivative(f, x0: float, m: int, h0: float, levels: int = 3,
                          cache: dict | None = None) -> tuple[float, float]:
    """m-th derivative (m = 1, 2, 3) by central differences and Richardson.

    Returns the extrapolated value and the difference between the two best
    tableau entries as an error estimate. ``cache`` memoises ``f`` by offset.
    """
    if m not in _STENCILS:
        raise DomainError("only derivative orders 1..3 are tabulated")
    cache = {} if cache is None else cache

    def fv(k_h):
        key = round(k_h, 15)
        if key not in cache:
            cache[key] = f(x0 + k_h)
        return cache[key]

    rows = []
    for lev in range(levels):
        h = h0 / 2 ** lev
        d = sum(w * fv(k * h) for k, w in _STENCILS[m]) / h ** m
        row = [d]
        for j in range(1, lev + 1):
            row.append(row[j - 1] + (row[j - 1] - rows[-1][j - 1]) / (4 ** j - 1))
        rows.append(row)
    best = rows[-1][-1]
    err = abs(best - rows[-1][-2]) if levels > 1 else math.inf
    return best, err


@dataclass(frozen=True)
class TaylorCheck:
    """Derivatives of ``(2nu+1)^2 * side`` at ``nu = n`` against references.

    ``coeffs[k]`` is the derivative of order ``k + 1``; ``errors`` are their
    Richardson error estimates; ``provenance`` says where each reference
    comes from.
    """

    side: str
    n: int
    coeffs: tuple
    refs: tuple
    errors: tuple
    provenance: tuple = field(default=())

    @property
    def deviations(self) -> tuple:
        return tuple(abs(c - r) for c, r in zip(self.coeffs, self.refs))

    @property
    def max_abs_dev(self) -> float:
        return max(self.deviations)


def taylor_refs(side: str, n: int) -> tuple[tuple, tuple]:
    """Reference derivatives of ``(2nu+1)^2 * side`` at an integer n."""
    side = side.upper()
    if side == "A_L":
        k = 2 * n + 1
        a3 = 288.0 / k ** 4 - 16.0 * _PI ** 2 / k ** 2  # third derivative of A itself
        g3 = k ** 2 * a3 - 288.0 / k ** 2                  # product rule with A(n) = 0
        return ((4.0, 0.0, g3),
                ("leading slope 4", "no quadratic term",
                 "from A'''(n) = 288/(2n+1)^4 - 16 pi^2/(2n+1)^2"))
    if side == "B_L":
        h = sum(1.0 / k for k in range(1, n + 1))
        return ((2.0, 8.0 * (h + 2.0 * LOG2), 24.0 * trigamma(n + 1.0) - 8.0 * _PI ** 2),
                ("leading slope 2", "expansion of the digamma closed form",
                 "expansion of the digamma closed form"))
    raise DomainError("side must be 'A_L' or 'B_L'")


def taylor_check(side: str, n: int, h0: float = 0.1, levels: int = 3) -> TaylorCheck:
    """Fit the first three derivatives of ``(2nu+1)^2 * side`` at ``nu = n``.

    ``side`` is ``"A_L"`` or ``"B_L"``; every sample is a quadrature value.

    Raises
    ------
    DomainError
        n outside 0..3 or unknown side.
    ConvergenceError
        If the Richardson tableau disagrees with itself by more than 1e-2
        relative on the first derivative.
    """
    side = side.upper()
    if side not in ("A_L", "B_L"):
        raise DomainError("side must be 'A_L' or 'B_L'")
    if not (isinstance(n, (int, np.integer)) and 0 <= n <= 3):
        raise DomainError("n must be an integer in 0..3")
    fn = a_left if side == "A_L" else b_left

    def g(nu):
        return (2.0 * nu + 1.0) ** 2 * float(np.real(fn(nu, _TAYLOR_QUAD_TOL).value))

    cache: dict = {}
    coeffs, errs = [], []
    for m in (1, 2, 3):
        d, e = richardson_derivative(g, float(n), m, h0, levels, cache)
        coeffs.append(d)
        errs.append(e)
    if errs[0] > 1e-2 * max(1.0, abs(coeffs[0])):
        raise ConvergenceError(f"first derivative did not settle (spread {errs[0]:.1e})")
    refs, prov = taylor_refs(side, int(n))
    return TaylorCheck(side, int(n), tuple(coeffs), refs, tuple(errs), prov)


# ------------------------------------------------------- cubic coefficient

CUBIC_PI_SQUARED = -8.0 * _PI ** 2 / 3.0
CUBIC_PI_CUBED = -8.0 * _PI ** 3 / 3.0


def cubic_coefficient(f, h: float = 1e-2) -> float:
    """Cubic Taylor coefficient at 0 of ``(2nu+1)^2 f(nu)``.

    Five-point third difference at steps h and h/2 combined by one Richardson
    step, divided by 3!.
    """
    def g(nu):
        return (2.0 * nu + 1.0) ** 2 * float(np.real(complex(f(nu))))

    def d3(step):
        return (g(2 * step) - 2 * g(step) + 2 * g(-step) - g(-2 * step)) / (2 * step ** 3)

    coarse, fine = d3(h), d3(0.5 * h)
    return (fine + (fine - coarse) / 3.0) / 6.0


def resolve_cubic_coefficient(h: float = 1e-2) -> float:
    """Cubic coefficient of ``(2nu+1)^2 A(nu)`` at ``nu = 0`` from the closed form.

    The two candidate printed values are ``CUBIC_PI_SQUARED`` (-8 pi^2/3) and
    ``CUBIC_PI_CUBED`` (-8 pi^3/3); ``closest_cubic_constant`` names the one
    the result matches.
    """
    if not 0 < h <= 0.1:
        raise DomainError("h must lie in (0, 0.1]")
    c = cubic_coefficient(lambda v: a_right(v).value, h)
    c_half = cubic_coefficient(lambda v: a_right(v).value, 0.5 * h)
    if abs(c - c_half) > 1e-3 * max(1.0, abs(c)):
        raise ConvergenceError(f"cubic coefficient unstable under step halving ({c} vs {c_half})")
    return c


def closest_cubic_constant(c: float) -> str:
    """Which printed constant a fitted cubic coefficient matches."""
    if abs(c - CUBIC_PI_SQUARED) <= abs(c - CUBIC_PI_CUBED):
        return "-8 pi^2/3"
    return "-8 pi^3/3"


# --------------------------------------------------------------- records

ASYM_CHECKS = ("hh", "taylor", "bound", "cubic")
HH_BOUND_CONSTANT = 0.5
HH_BOUND_DEGREE = 20.25


def _window_record(id_: str, value: float, lo: float, hi: float, extra: dict | None = None,
                   elapsed: float = 0.0, n_evals: int = 0) -> VerificationRecord:
    """Record for a criterion ``lo <= value <= hi``.

    ``rhs`` is the admissible value nearest to ``value`` and the tolerance is
    zero, so the usual pass rule reduces to the window test.
    """
    params = dict(extra or {})
    # one-sided windows store only their finite end
    if math.isfinite(lo):
        params["lo"] = lo
    if math.isfinite(hi):
        params["hi"] = hi
    target = min(max(value, lo), hi) if math.isfinite(value) else math.nan
    diag = None if lo <= value <= hi else f"{value:.6g} outside [{lo:.6g}, {hi:.6g}]"
    return VerificationRecord.build(id_, params, value, target, 0.0, n_evals, elapsed,
                                    diagnostic=diag)


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_records(check: str) -> list[VerificationRecord]:
    """Records for one family of asymptotic criteria.

    ``hh``: Hansen-Heine rate window and the residual bound at nu = 20.25;
    ``taylor``: near-integer derivatives for n = 0, 1, 2;
    ``bound``: decay of the scaled A and B residuals and the identity gap at
    the sample degrees; ``cubic``: the cubic Taylor coefficient.
    """
    check = check.lower()
    if check not in ASYM_CHECKS:
        raise DomainError(f"check must be one of {ASYM_CHECKS}")
    inf = math.inf
    out = []
    if check == "hh":
        fit, dt = _timed(lambda: hansen_heine_rate(HH_DEGREES, "P"))
        out.append(_window_record("ASYM_HH_RATE", fit.exponent, *HH_WINDOW, elapsed=dt))
        scale = 2.0 * HH_BOUND_DEGREE + 1.0
        for kind in ("P", "Q"):
            r, dt = _timed(lambda: hansen_heine_residual(HH_BOUND_DEGREE, None, kind))
            out.append(_window_record(f"ASYM_HH_BOUND_{kind}", r, 0.0, HH_BOUND_CONSTANT / scale,
                                      {"nu": HH_BOUND_DEGREE}, dt))
    elif check == "taylor":
        for n in (0, 1, 2):
            ta, dta = _timed(lambda: taylor_check("A_L", n))
            tb, dtb = _timed(lambda: taylor_check("B_L", n))
            out.append(_window_record("ASYM_TAYLOR_A1", ta.coeffs[0], 4.0 - 1e-3, 4.0 + 1e-3,
                                      {"n": n}, dta))
            out.append(_window_record("ASYM_TAYLOR_A2", ta.coeffs[1], -1e-2, 1e-2, {"n": n}))
            out.append(_window_record("ASYM_TAYLOR_A3", ta.coeffs[2], ta.refs[2] - 0.1,
                                      ta.refs[2] + 0.1, {"n": n}))
            out.append(_window_record("ASYM_TAYLOR_B1", tb.coeffs[0], 2.0 - 1e-3, 2.0 + 1e-3,
                                      {"n": n}, dtb))
            out.append(_window_record("ASYM_TAYLOR_AB", ta.coeffs[0] / tb.coeffs[0],
                                      2.0 - 1e-3, 2.0 + 1e-3, {"n": n}))
    elif check == "bound":
        for which in ("A", "B"):
            (fit, samples), dt = _timed(lambda: moment_decay(which))
            out.append(_window_record(f"ASYM_{which}_DECAY", fit.exponent, -inf,
                                      MOMENT_THRESHOLD, elapsed=dt))
            gap = max(s.identity_gap for s in samples)
            out.append(_window_record(f"ASYM_{which}_GAP", gap, 0.0, 1e-6))
    else:
        c, dt = _timed(resolve_cubic_coefficient)
        out.append(_window_record("ASYM_CUBIC", c, CUBIC_PI_SQUARED - 0.1,
                                  CUBIC_PI_SQUARED + 0.1, elapsed=dt))
        out.append(_window_record("ASYM_CUBIC_SEPARATION", abs(c - CUBIC_PI_CUBED), 50.0, inf))
        cl, dt = _timed(lambda: cubic_coefficient(lambda v: a_left(v, _TAYLOR_QUAD_TOL).value))
        out.append(_window_record("ASYM_CUBIC_LEFT", cl - c, -1e-2, 1e-2, elapsed=dt))
    return out
