"""Legendre functions P_nu and Q_nu on the cut (-1, 1) for complex degree.

Evaluation route
----------------
Both kinds are computed together. Write ``z = (1 - y)/2`` for
``0 <= y < 1``, so that ``z <= 1/2``.

1. Shift the degree to a base ``nu_b`` with ``0 <= Re nu_b < 1`` (or keep it
   when ``-1/2 <= Re nu < 0``).
2. At ``nu_b`` and ``nu_b + 1`` sum the Gauss series
   ``P = F(-nu, nu+1; 1; z)`` and its logarithmic partner for Q, which is
   regular at integer degree. No ``1/sin(nu pi)`` appears, so integer and
   near-integer degrees need no special path.
3. Climb to ``nu`` with the three-term recurrence in the degree, which is
   stable on the cut for both solutions.
4. For ``x = -y < 0`` use the connection formulas that express
   ``P_nu(-y)`` and ``Q_nu(-y)`` through ``P_nu(y)`` and ``Q_nu(y)``.

Degrees with ``Re nu < -1/2`` are first reflected to ``-nu - 1``.

The Mehler-Dirichlet integral (``legendre_p_md``) and Neumann's principal
value integral (``legendre_q_neumann``) are independent quadrature routes
used as oracles.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ..errors import AccuracyError, ConvergenceError, DomainError
from ..quadrature import integrate_finite, integrate_pv
from .core import EULER_GAMMA, Degree, SpecialValue, cospi, sinpi
from .polygamma import polygamma

_EPS = 2.220446049250313e-16
_MAX_TERMS = 4000
DEFAULT_TOL = 1e-11


class LegendrePair(NamedTuple):
    """P and Q at ``y`` and ``-y`` for one degree, with absolute errors."""

    p_pos: np.ndarray
    p_neg: np.ndarray
    q_pos: np.ndarray
    q_neg: np.ndarray
    err_p_pos: np.ndarray
    err_p_neg: np.ndarray
    err_q_pos: np.ndarray
    err_q_neg: np.ndarray


def _coefficients(nu: complex, zmax: float):
    """Taylor coefficients in z of P_nu and of the log-series remainder.

    Returns arrays ``t`` (for F(-nu, nu+1; 1; z)) and ``c`` with
    ``Q_nu = -(gamma + psi(nu+1)) P_nu - (P_nu log z + sum c_k z^k)/2``.
    """
    a = -nu
    b = nu + 1.0
    # p = (a)_k/k!, u = d/da (a)_k / k!, likewise q, v for b
    p, q, u, v = 1.0 + 0j, 1.0 + 0j, 0j, 0j
    harmonic = 0.0
    ts = [1.0 + 0j]
    cs = [0j]
    scale = 1.0
    for k in range(_MAX_TERMS):
        u = (u * (a + k) + p) / (k + 1)
        v = (v * (b + k) + q) / (k + 1)
        p = p * (a + k) / (k + 1)
        q = q * (b + k) / (k + 1)
        harmonic += 1.0 / (k + 1)
        t = p * q
        c = u * q + p * v - 2.0 * harmonic * t
        ts.append(t)
        cs.append(c)
        zk = zmax ** (k + 1)
        mag = (abs(t) + abs(c)) * zk
        scale = max(scale, mag)
        if k + 1 > abs(nu) + 2 and mag <= 1e-18 * scale:
            break
    else:
        raise ConvergenceError(f"Legendre series did not converge for nu={nu}")
    return np.array(ts), np.array(cs)


def _horner(coef: np.ndarray, z: np.ndarray) -> np.ndarray:
    out = np.full(z.shape, coef[-1], dtype=complex)
    for c in coef[-2::-1]:
        out = out * z + c
    return out


def _base(nu: complex, z: np.ndarray):
    """P_nu, Q_nu and a cancellation-aware error scale at ``y = 1 - 2z``."""
    t, c = _coefficients(nu, float(np.max(z)))
    P = _horner(t, z)
    S = _horner(c, z)
    Pabs = _horner(np.abs(t), z).real
    Sabs = _horner(np.abs(c), z).real
    lead = -(EULER_GAMMA + complex(polygamma(0, nu + 1.0).value))
    logz = np.log(z)
    Q = lead * P - 0.5 * (P * logz + S)
    nterm = t.size
    errP = _EPS * (4 + 0.25 * nterm) * Pabs
    errQ = _EPS * (4 + 0.25 * nterm) * ((abs(lead) + 0.5 * np.abs(logz)) * Pabs + 0.5 * Sabs) \
        + _EPS * 8 * np.abs(Q)
    return P, Q, errP, errQ


def _pq_nonneg(nu: complex, z: np.ndarray):
    """P_nu(y), Q_nu(y) for Re nu >= -1/2 and y = 1 - 2z in [0, 1)."""
    m = max(0, int(math.floor(nu.real)))
    nb = nu - m
    y = 1.0 - 2.0 * z
    P0, Q0, eP0, eQ0 = _base(nb, z)
    if m == 0:
        return P0, Q0, eP0, eQ0
    P1, Q1, eP1, eQ1 = _base(nb + 1.0, z)
    for j in range(1, m):
        k = nb + j
        P0, P1 = P1, ((2.0 * k + 1.0) * y * P1 - k * P0) / (k + 1.0)
        Q0, Q1 = Q1, ((2.0 * k + 1.0) * y * Q1 - k * Q0) / (k + 1.0)
    # relative base accuracy carried through the recurrence against the
    # natural envelope of the two solutions
    env = np.hypot(np.abs(P1), (2.0 / math.pi) * np.abs(Q1))
    env0 = np.maximum(np.hypot(np.abs(P0), (2.0 / math.pi) * np.abs(Q0)), 1e-300)
    rel = np.maximum(np.maximum(eP0, eP1), (2.0 / math.pi) * np.maximum(eQ0, eQ1)) / env0
    rel = np.minimum(rel, 1.0)
    grow = _EPS * (4.0 + 0.5 * m)
    errP = (rel + grow) * env
    errQ = (rel + grow) * env * (0.5 * math.pi)
    return P1, Q1, errP, errQ


def _pair_nonneg(nu: complex, z: np.ndarray) -> LegendrePair:
    P, Q, eP, eQ = _pq_nonneg(nu, z)
    c = complex(cospi(nu))
    s = complex(sinpi(nu))
    Pn = c * P - (2.0 / math.pi) * s * Q
    Qn = -c * Q - 0.5 * math.pi * s * P
    ePn = abs(c) * eP + (2.0 / math.pi) * abs(s) * eQ + 4 * _EPS * np.abs(Pn)
    eQn = abs(c) * eQ + 0.5 * math.pi * abs(s) * eP + 4 * _EPS * np.abs(Qn)
    return LegendrePair(P, Pn, Q, Qn, eP, ePn, eQ, eQn)


def legendre_pair(nu, z) -> LegendrePair:
    """P_nu and Q_nu at both ``y = 1 - 2z`` and ``-y``, for ``0 < z <= 1/2``.

    Passing ``z = sin(theta/2)**2`` instead of ``x = cos(theta)`` keeps full
    relative accuracy in the distance to ``x = 1``. At negative integer
    degree Q has a pole and is returned as NaN.
    """
    nu = Degree.of(nu).value
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(~(z > 0.0)) or np.any(z > 0.5):
        raise DomainError("legendre_pair needs 0 < z <= 1/2")
    if nu.real >= -0.5:
        return _pair_nonneg(nu, z)
    r = _pair_nonneg(-nu - 1.0, z)
    s = complex(sinpi(nu))
    if abs(s) < 1e-280:
        nan = np.full(z.shape, np.nan + 0j)
        inf = np.full(z.shape, np.inf)
        return LegendrePair(r.p_pos, r.p_neg, nan, nan, r.err_p_pos, r.err_p_neg, inf, inf)
    # Q_nu - Q_{-nu-1} = pi cot(nu pi) P_nu
    k = math.pi * complex(cospi(nu)) / s
    qp = r.q_pos + k * r.p_pos
    qn = r.q_neg + k * r.p_neg
    eqp = r.err_q_pos + abs(k) * r.err_p_pos + 4 * _EPS * np.abs(qp)
    eqn = r.err_q_neg + abs(k) * r.err_p_neg + 4 * _EPS * np.abs(qn)
    return LegendrePair(r.p_pos, r.p_neg, qp, qn, r.err_p_pos, r.err_p_neg, eqp, eqn)


def _real_if(nu: complex, arr: np.ndarray):
    return arr.real.copy() if nu.imag == 0.0 else arr


def legendre_pq(nu, x):
    """P_nu(x), Q_nu(x) and their error estimates for an array ``x``.

    Requires -1 < x < 1; both outputs are real for real ``nu``.
    """
    nu = Degree.of(nu).value
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(np.abs(xa) < 1.0)):
        raise DomainError("legendre_pq needs -1 < x < 1")
    P = np.empty(xa.shape, dtype=complex)
    Q = np.empty(xa.shape, dtype=complex)
    eP = np.empty(xa.shape)
    eQ = np.empty(xa.shape)
    pos = xa >= 0.0
    neg = ~pos
    if pos.any():
        z = 0.5 * (1.0 - xa[pos])
        pair = legendre_pair(nu, z)
        P[pos], Q[pos], eP[pos], eQ[pos] = pair.p_pos, pair.q_pos, pair.err_p_pos, pair.err_q_pos
    if neg.any():
        z = 0.5 * (1.0 + xa[neg])
        pair = legendre_pair(nu, z)
        P[neg], Q[neg], eP[neg], eQ[neg] = pair.p_neg, pair.q_neg, pair.err_p_neg, pair.err_q_neg
    return _real_if(nu, P), _real_if(nu, Q), eP, eQ


def _finish(value, err, tol, scalar, what):
    if tol is not None:
        bound = tol * np.maximum(1.0, np.abs(value))
        if np.any(err > bound):
            raise AccuracyError(f"{what}: error estimate {np.max(err):.2e} exceeds tolerance {tol:g}")
    if scalar:
        return SpecialValue(value[0].item(), float(err[0]))
    return SpecialValue(value, err)


def legendre_p(nu, x, tol: float | None = DEFAULT_TOL) -> SpecialValue:
    """Legendre function of the first kind P_nu(x) for -1 < x <= 1.

    Parameters
    ----------
    nu : Degree, float or complex
        Degree; any finite complex value.
    x : float or array_like
        Argument on the cut.
    tol : float or None
        Relative accuracy demanded against ``max(1, |P|)``. Near ``x = -1``
        the logarithmic singularity of non-integer degree can push the error
        estimate past it, in which case AccuracyError is raised. ``None``
        disables the check.
    """
    nu_c = Degree.of(nu).value
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.ndim(x) == 0
    if np.any(~(xa > -1.0)) or np.any(xa > 1.0):
        raise DomainError("legendre_p needs -1 < x <= 1")
    one = xa == 1.0
    val = np.ones(xa.shape, dtype=complex)
    err = np.zeros(xa.shape)
    if (~one).any():
        P, _, eP, _ = legendre_pq(nu_c, xa[~one])
        val[~one] = P
        err[~one] = eP
    return _finish(_real_if(nu_c, val), err, tol, scalar, f"P_{nu_c}")


def legendre_q(nu, x, tol: float | None = DEFAULT_TOL) -> SpecialValue:
    """Legendre function of the second kind Q_nu(x) for -1 < x < 1.

    Integer and near-integer degrees go through the same logarithmic series
    as any other degree, which is the integer limit itself; the
    ``cos(nu pi) P_nu(x) - P_nu(-x)`` quotient is never formed.
    """
    nu_c = Degree.of(nu).value
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.ndim(x) == 0
    _, Q, _, eQ = legendre_pq(nu_c, xa)
    return _finish(Q, eQ, tol, scalar, f"Q_{nu_c}")


def legendre_p_md(nu, theta: float, tol: float = 1e-12) -> SpecialValue:
    """P_nu(cos theta) from the Mehler-Dirichlet integral.

    ``P_nu(cos t) = (2/pi) int_0^t cos((nu + 1/2) b) / sqrt(2(cos b - cos t)) db``.
    The square-root singularity at ``b = t`` is integrated with the exact
    endpoint distance, writing ``cos b - cos t = 2 sin((t-b)/2) sin((t+b)/2)``.
    """
    nu_c = Degree.of(nu).value
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise DomainError("legendre_p_md needs 0 < theta < pi")
    k = nu_c + 0.5
    # sin((t + b)/2) = sin((2 pi - t - b)/2); the second form keeps accuracy near pi
    pi_minus = math.pi - theta

    def integrand(b, _dlo, dhi):
        half_sum = np.where(theta + b < math.pi, 0.5 * (theta + b), 0.5 * (pi_minus + (math.pi - b)))
        denom = np.sqrt(4.0 * np.sin(0.5 * dhi) * np.sin(half_sum))
        return np.cos(k * b) / denom

    r = integrate_finite(integrand, 0.0, theta, tol, distances=True)
    if not r.converged:
        raise ConvergenceError(f"Mehler-Dirichlet quadrature did not converge (err {r.err_est:.2e})")
    val = (2.0 / math.pi) * r.value
    if nu_c.imag == 0.0:
        val = float(np.real(val))
    return SpecialValue(val, (2.0 / math.pi) * r.err_est)


def legendre_poly(n: int, x):
    """Legendre polynomial P_n(x) by the three-term recurrence."""
    if n < 0:
        raise DomainError("polynomial degree must be >= 0")
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = x.copy()
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1


def legendre_q_neumann(n: int, x: float, tol: float = 1e-12) -> SpecialValue:
    """Q_n(x) from Neumann's principal value ``(1/2) PV int P_n(s)/(x - s) ds``."""
    if n < 0 or int(n) != n:
        raise DomainError("Neumann's integral needs an integer degree n >= 0")
    r = integrate_pv(lambda s: legendre_poly(int(n), s), -1.0, 1.0, float(x), 2.0 * tol)
    if not r.converged:
        raise ConvergenceError("principal value quadrature did not converge")
    return SpecialValue(0.5 * float(np.real(r.value)), 0.5 * r.err_est)


# ----------------------------------------------------- degree derivatives

_STENCILS = {
    1: ((1, 0.5), (-1, -0.5)),
    2: ((1, 1.0), (0, -2.0), (-1, 1.0)),
    3: ((2, 0.5), (1, -1.0), (-1, 1.0), (-2, -0.5)),
}


def _difference(n: int, m: int, x: float, h: float) -> float:
    total = 0.0
    for shift, weight in _STENCILS[m]:
        total += weight * _p_real(n + shift * h, x)
    return total / h ** m


def _p_real(nu: float, x: float) -> float:
    if x == 1.0:
        return 1.0
    P, _, _, _ = legendre_pq(nu, np.array([x]))
    return float(np.real(P[0]))


def nu_derivative_tableau(n: int, m: int, x: float, h0: float = 1e-2,
                          levels: int = 3) -> list[list[float]]:
    """Richardson tableau for the m-th degree derivative of P_nu(x) at nu = n.

    Row ``i`` starts from the central difference with step ``h0 / 2**i``;
    column ``j`` has the errors ``h^2, ..., h^(2j)`` removed.
    """
    if m not in _STENCILS:
        raise DomainError("derivative order must be 1, 2 or 3")
    if h0 <= 0 or h0 / 2 ** (levels - 1) < 1e-6:
        raise ConvergenceError("finite-difference step underflows the accuracy budget")
    table: list[list[float]] = []
    for i in range(levels):
        row = [_difference(n, m, x, h0 / 2 ** i)]
        for j in range(1, i + 1):
            f = 4.0 ** j
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (f - 1.0))
        table.append(row)
    return table


def legendre_nu_derivative(n: int, m: int, x: float, h0: float = 1e-2,
                           levels: int = 3) -> SpecialValue:
    """``d^m/dnu^m P_nu(x)`` at integer ``nu = n`` by Richardson-extrapolated
    central differences along the real degree axis.

    The error estimate is the change made by the last extrapolation column
    plus the rounding noise of the finest difference quotient.
    """
    if int(n) != n or n < 0:
        raise DomainError("n must be a nonnegative integer")
    x = float(x)
    if not -1.0 < x <= 1.0:
        raise DomainError("need -1 < x <= 1")
    if x == 1.0:
        return SpecialValue(0.0, 0.0)
    table = nu_derivative_tableau(int(n), m, x, h0, levels)
    best = table[-1][-1]
    h = h0 / 2 ** (levels - 1)
    scale = max(1.0, abs(_p_real(float(n), x)))
    noise = 64 * _EPS * scale / h ** m
    err = abs(best - table[-1][-2]) + noise if levels > 1 else noise
    bound = 1e-7 if m <= 2 else 1e-5
    if not math.isfinite(best) or err > 1e3 * bound:
        raise ConvergenceError(f"Richardson extrapolation did not settle (err {err:.2e})")
    return SpecialValue(best, err)
