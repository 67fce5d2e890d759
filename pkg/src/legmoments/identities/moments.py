"""Integral sides of the catalog identities.

Legendre integrals over ``x in (-1, 1)`` are folded onto ``x = cos(theta)``,
``theta in (0, pi/2]``, so that one call to ``legendre_pair`` with
``z = sin(theta/2)**2`` supplies the values at ``x`` and ``-x`` with full
relative accuracy in the distance to ``x = 1``. The logarithmic singularity
of ``P_nu(-x)`` at ``theta = 0`` is left to the tanh-sinh rule.

Bessel moments on ``(0, inf)`` use ``integrate_osc_tail`` with the common
period of their asymptotic oscillation, or ``integrate_decaying`` with the
exponentially scaled I and K when the integrand decays.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import DomainError
from ..quadrature import (OscTailSpec, QuadResult, integrate_decaying, integrate_finite,
                          integrate_osc_tail, integrate_pv)
from ..special.bessel import bessel_j, ik_scaled, jy
from ..special.core import Degree, sinpi
from ..special.legendre import legendre_pair, legendre_poly, legendre_pq

_HALF_PI = 0.5 * math.pi
_FOUR_OVER_PI2 = 4.0 / math.pi ** 2


def _fold_pair(nu: complex, theta: np.ndarray):
    c = np.cos(theta)
    # rounding can push z past 1/2 at theta = pi/2 or to 0 at the tiniest nodes
    z = np.clip(np.sin(0.5 * theta) ** 2, 1e-300, 0.5)
    return c, legendre_pair(nu, z)


def _real_if(nu: complex, r: QuadResult) -> QuadResult:
    if nu.imag == 0.0 and isinstance(r.value, complex):
        return QuadResult(r.value.real, r.err_est, r.n_evals, r.converged)
    return r


def _theta_integral(nu, integrand, tol: float) -> QuadResult:
    nu = Degree.of(nu).value

    def f(theta):
        c, pr = _fold_pair(nu, theta)
        return integrand(c, np.sin(theta), pr)

    return _real_if(nu, integrate_finite(f, 0.0, _HALF_PI, tol))


# ------------------------------------------------------- Legendre moments

def a_left(nu, tol: float = 1e-10) -> QuadResult:
    """``int_{-1}^1 x P_nu(x)^4 dx``."""
    return _theta_integral(nu, lambda c, s, p: (p.p_pos ** 4 - p.p_neg ** 4) * c * s, tol)


def b_left(nu, tol: float = 1e-10) -> QuadResult:
    """``int_0^1 x P_nu(x)^2 (P_nu(x)^2 - P_nu(-x)^2) dx``."""
    return _theta_integral(
        nu, lambda c, s, p: p.p_pos ** 2 * (p.p_pos ** 2 - p.p_neg ** 2) * c * s, tol)


def p3p_left(nu, tol: float = 1e-10) -> QuadResult:
    """``(2nu+1)^2 int_{-1}^1 x P_nu(x)^3 P_nu(-x) dx``."""
    nu_c = Degree.of(nu).value
    r = _theta_integral(
        nu_c, lambda c, s, p: p.p_pos * p.p_neg * (p.p_pos ** 2 - p.p_neg ** 2) * c * s, tol)
    k = (2.0 * nu_c + 1.0) ** 2
    if nu_c.imag == 0.0:
        k = k.real
    return QuadResult(k * r.value, abs(k) * r.err_est, r.n_evals, r.converged)


def pqqq_left(n: int, tol: float = 1e-10) -> QuadResult:
    """``int_{-1}^1 x P_n Q_n (4/pi^2 Q_n^2 - P_n^2) dx`` for integer n >= 0."""
    def g(P, Q):
        return P * Q * (_FOUR_OVER_PI2 * Q * Q - P * P)

    return _theta_integral(
        float(n), lambda c, s, p: (g(p.p_pos, p.q_pos) - g(p.p_neg, p.q_neg)) * c * s, tol)


def pp_left(nu, tol: float = 1e-10) -> QuadResult:
    """``int_{-1}^1 P_nu(x) P_nu(-x) dx`` (even integrand, folded)."""
    r = _theta_integral(nu, lambda c, s, p: 2.0 * p.p_pos * p.p_neg * s, tol)
    return r


def pnqn_left(n: int, tol: float = 1e-10) -> QuadResult:
    """``int_{-1}^1 P_n Q_n dx`` over the whole interval, without symmetry."""
    def f(x):
        P, Q, _, _ = legendre_pq(float(n), x)
        return P * Q

    return integrate_finite(f, -1.0, 1.0, tol)


# ------------------------------------------------- principal-value sides

def _pp_product(nu: complex):
    def f(xi):
        z = 0.5 * (1.0 - np.abs(xi))
        p = legendre_pair(nu, z)
        out = p.p_pos * p.p_neg
        return out.real if nu.imag == 0.0 else out
    return f


def tricomi_pp_left(nu, x: float, tol: float = 1e-10) -> QuadResult:
    """``(2 sin(nu pi)/pi) PV int_{-1}^1 P_nu(xi) P_nu(-xi) / (x - xi) dxi``."""
    nu_c = Degree.of(nu).value
    k = 2.0 * complex(sinpi(nu_c)) / math.pi
    k = k.real if nu_c.imag == 0.0 else k
    f = _pp_product(nu_c)
    r = integrate_pv(f, -1.0, 1.0, x, tol / max(abs(k), 1e-300))
    return QuadResult(k * r.value, abs(k) * r.err_est, r.n_evals, r.converged)


def tricomi_xpp_left(nu, x: float, tol: float = 1e-10) -> QuadResult:
    """``(2 sin(nu pi)/pi) PV int_{-1}^1 xi P_nu(xi) P_nu(-xi) / (x - xi) dxi``."""
    nu_c = Degree.of(nu).value
    k = 2.0 * complex(sinpi(nu_c)) / math.pi
    k = k.real if nu_c.imag == 0.0 else k
    base = _pp_product(nu_c)
    r = integrate_pv(lambda xi: xi * base(xi), -1.0, 1.0, x, tol / max(abs(k), 1e-300))
    return QuadResult(k * r.value, abs(k) * r.err_est, r.n_evals, r.converged)


def _pq_product(n: int, weight: bool):
    def f(xi):
        P, Q, _, _ = legendre_pq(float(n), xi)
        return xi * P * Q if weight else P * Q
    return f


def pq_t_left(n: int, x: float, tol: float = 1e-10) -> QuadResult:
    """``(4/pi^2) PV int_{-1}^1 P_n(xi) Q_n(xi) / (x - xi) dxi``."""
    r = integrate_pv(_pq_product(n, False), -1.0, 1.0, x, tol / _FOUR_OVER_PI2)
    return QuadResult(_FOUR_OVER_PI2 * r.value, _FOUR_OVER_PI2 * r.err_est, r.n_evals, r.converged)


def xpq_t_left(n: int, x: float, tol: float = 1e-10) -> QuadResult:
    """``(4/pi^2) PV int_{-1}^1 xi P_n(xi) Q_n(xi) / (x - xi) dxi``."""
    r = integrate_pv(_pq_product(n, True), -1.0, 1.0, x, tol / _FOUR_OVER_PI2)
    return QuadResult(_FOUR_OVER_PI2 * r.value, _FOUR_OVER_PI2 * r.err_est, r.n_evals, r.converged)


def neumann_left(n: int, x: float, tol: float = 1e-10) -> QuadResult:
    """``(1/2) PV int_{-1}^1 P_n(xi) / (x - xi) dxi``."""
    r = integrate_pv(lambda xi: legendre_poly(n, xi), -1.0, 1.0, x, 2.0 * tol)
    return QuadResult(0.5 * r.value, 0.5 * r.err_est, r.n_evals, r.converged)


# ----------------------------------------------------- Bessel moments

def _j0y0(x):
    j, y, _ = jy(0.0, x)
    return j, y


def _osc(f, quarter: float, tol: float) -> QuadResult:
    return integrate_osc_tail(f, OscTailSpec(0.0, quarter), tol)


def jy3_left(tol: float = 1e-7) -> QuadResult:
    """``int_0^inf x J0 Y0^3 dx``."""
    def f(x):
        j, y = _j0y0(x)
        return x * j * y ** 3
    return _osc(f, 0.25 * math.pi, tol)


def j3y_left(tol: float = 1e-7) -> QuadResult:
    """``int_0^inf x J0^3 Y0 dx``."""
    def f(x):
        j, y = _j0y0(x)
        return x * j ** 3 * y
    return _osc(f, 0.25 * math.pi, tol)


def j4_3j2y2_left(tol: float = 1e-7) -> QuadResult:
    """``int_0^inf x J0^2 (J0^2 - 3 Y0^2) dx``."""
    def f(x):
        j, y = _j0y0(x)
        return x * j * j * (j * j - 3.0 * y * y)
    return _osc(f, 0.25 * math.pi, tol)


def j4_6j2y2_y4_left(tol: float = 1e-7) -> QuadResult:
    """``int_0^inf x (J0^4 - 6 J0^2 Y0^2 + Y0^4) dx``."""
    def f(x):
        j, y = _j0y0(x)
        j2, y2 = j * j, y * y
        return x * (j2 * j2 - 6.0 * j2 * y2 + y2 * y2)
    return _osc(f, 0.25 * math.pi, tol)


def j2y2_cos_left(tol: float = 1e-7) -> QuadResult:
    """``int_0^inf [x J0^2 (Y0^2 - J0^2) + (1 - cos 4x)/(pi^2 x)] dx``."""
    def f(x):
        j, y = _j0y0(x)
        return x * j * j * (y * y - j * j) + 2.0 * np.sin(2.0 * x) ** 2 / (math.pi ** 2 * x)
    return _osc(f, 0.25 * math.pi, tol)


def k04_left(tol: float = 1e-11) -> QuadResult:
    """``int_0^inf t K0(t)^4 dt`` with ``K0 = e^-t Ke0``."""
    def f(t):
        _, ke, _, _ = ik_scaled(0.0, t)
        return t * ke ** 4 * np.exp(-4.0 * t)
    return integrate_decaying(f, 0.0, tol)


def ik_exp_left(tol: float = 1e-10) -> QuadResult:
    """``int_0^inf [(1 - e^{-4y})/y - 4 y I0^2 K0^2] dy``."""
    def f(y):
        ie, ke, _, _ = ik_scaled(0.0, y)
        return -np.expm1(-4.0 * y) / y - 4.0 * y * (ie * ke) ** 2
    return integrate_decaying(f, 0.0, tol)


def iikk_left(nu: float, tol: float = 1e-9) -> QuadResult:
    """``int_0^inf y [I_{nu-1/2} I_{nu+1/2} K_{nu-1/2} K_{nu+1/2} - (I_nu K_nu)^2] dy``.

    Products of scaled functions are exactly the unscaled products.
    """
    nu = float(nu)

    def f(y):
        i1, k1, _, _ = ik_scaled(nu - 0.5, y)
        i2, k2, _, _ = ik_scaled(nu + 0.5, y)
        i0, k0, _, _ = ik_scaled(nu, y)
        # at the smallest nodes I underflows while K overflows; those samples
        # come back NaN and the quadrature drops them as endpoint values
        with np.errstate(invalid="ignore", over="ignore"):
            return y * (i1 * i2 * k1 * k2 - (i0 * k0) ** 2)
    return integrate_decaying(f, 0.0, tol)


def watson_left(nu: float, y: float, tol: float = 1e-7) -> QuadResult:
    """``int_0^{pi/2} J_{2nu}(2y tan phi) / cos phi dphi`` as ``int_0^inf J_{2nu}(2yt)/sqrt(1+t^2) dt``."""
    nu, y = float(nu), float(y)

    def f(t):
        return bessel_j(2.0 * nu, 2.0 * y * t) / np.sqrt(1.0 + t * t)
    return _osc(f, 0.25 * math.pi / y, tol)


def common_frequency(*freqs: float) -> float:
    """Largest ``g`` with every frequency an integer multiple of ``g``.

    Frequencies must be commensurate with small denominators (<= 64).
    """
    fr = []
    for w in freqs:
        if w == 0:
            continue
        q = Fraction(w).limit_denominator(64)
        if abs(float(q) - w) > 1e-12 * abs(w):
            raise DomainError(f"frequency {w!r} is not a simple rational; no common period")
        fr.append(abs(q))
    if not fr:
        raise DomainError("no oscillation")
    num = 0
    den = 1
    for q in fr:
        den = den * q.denominator // math.gcd(den, q.denominator)
    for q in fr:
        num = math.gcd(num, int(q * den))
    return num / den


def weber_left(mu: float, a: float, b: float, tol: float = 1e-7) -> QuadResult:
    """``int_0^inf J_mu(at) J_{mu-1}(bt) dt``."""
    mu, a, b = float(mu), float(a), float(b)
    g = common_frequency(a + b, a - b)

    def f(t):
        return bessel_j(mu, a * t) * bessel_j(mu - 1.0, b * t)
    return _osc(f, 0.5 * math.pi / g, tol)


def prud_left(nu: float, b: float, c: float, tol: float = 1e-7) -> QuadResult:
    """``int_0^inf x J_nu(bx)^2 J_nu(cx) Y_nu(cx) dx``."""
    nu, b, c = float(nu), float(b), float(c)
    g = common_frequency(2.0 * b, 2.0 * c)

    def f(x):
        jb = bessel_j(nu, b * x)
        jc, yc, _ = jy(nu, c * x)
        return x * jb * jb * jc * yc
    return _osc(f, 0.5 * math.pi / g, tol)


def sin2cot_left(nu, tol: float = 1e-10) -> QuadResult:
    """``(2/pi^2) int_0^{pi/2} sin^2((2nu+1) theta) cot(theta) dtheta``."""
    nu_c = Degree.of(nu).value
    w = 2.0 * nu_c + 1.0
    if nu_c.imag == 0.0:
        w = w.real

    def f(t):
        return np.sin(w * t) ** 2 / np.tan(t)
    k = 2.0 / math.pi ** 2
    r = integrate_finite(f, 0.0, _HALF_PI, tol / k)
    return QuadResult(k * r.value, k * r.err_est, r.n_evals, r.converged)
