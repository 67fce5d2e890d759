"""Real-line quadrature for the identity harness.

Four contracts:

``integrate_finite``
    Adaptive tanh-sinh on [a, b]. Endpoint singularities of log or power
    type are absorbed by the double-exponential clustering. If refinement
    fails, the interval is bisected.
``integrate_pv``
    Cauchy principal value of ``f(xi) / (pole - xi)`` by subtracting
    ``f(pole)`` and integrating the smooth remainder on both sides of the
    pole.
``integrate_osc_tail``
    ``lim_{M->inf} int_start^M f`` for slowly decaying oscillatory
    integrands. The range is cut into full periods, each one is integrated
    with ``integrate_finite``, and partial sums taken after geometrically
    growing numbers of periods are accelerated with Sidi's W algorithm.
``integrate_decaying``
    Exp-sinh on [a, inf) for integrands that decay exponentially or fast
    enough algebraically.

Integrands are called with a 1-d float array and must return an array of the
same length. Real or complex results are both fine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, IntegrandError

Integrand = Callable[[np.ndarray], np.ndarray]

DEFAULT_TOL_FINITE = 1e-10
DEFAULT_TOL_PV = 1e-9
DEFAULT_TOL_OSC = 1e-7
DEFAULT_TOL_DECAYING = 1e-10

_EPS = np.finfo(float).eps
_HALF_PI = 0.5 * math.pi
# keeps node distances to the endpoints above ~1e-150 of the half-width
_TS_TMAX = 5.4
# exp-sinh abscissae span roughly 1e-150 ... 1e150 around the lower limit
_ES_TMIN = -5.4
_ES_TMAX = 5.4
_MAX_LEVEL = 9
_MAX_DEPTH = 14
# oscillatory driver: growth of the sampled segment counts, W-transform depth
_SAMPLE_RATIO = 1.4
_W_WINDOW = 12


@dataclass(frozen=True)
class QuadResult:
    """Outcome of one integration.

    Attributes
    ----------
    value : float or complex
        Best estimate of the integral.
    err_est : float
        Estimated absolute error.
    n_evals : int
        Number of integrand evaluations spent.
    converged : bool
        True when ``err_est`` met the requested tolerance.
    """

    value: float | complex
    err_est: float
    n_evals: int
    converged: bool

    def __post_init__(self):
        object.__setattr__(self, "converged", bool(self.converged))
        object.__setattr__(self, "err_est", float(self.err_est))

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.err_est + other.err_est,
                          self.n_evals + other.n_evals, self.converged and other.converged)


@dataclass(frozen=True)
class OscTailSpec:
    """Segmentation data for a conditionally convergent tail.

    ``quarter_period`` is a quarter of the common period of the oscillation
    (pi/2 for cos(x), pi/4 for cos(2x)...). Segments are one full period
    long, so the partial sums are sampled at a fixed oscillation phase.
    """

    start: float = 0.0
    quarter_period: float = _HALF_PI
    max_segments: int = 400

    def __post_init__(self):
        if not (self.start >= 0.0 and math.isfinite(self.start)):
            raise DomainError("start must be finite and >= 0")
        if not self.quarter_period > 0.0:
            raise DomainError("quarter_period must be positive")
        if self.max_segments < 8:
            raise DomainError("max_segments must be at least 8")

    @property
    def period(self) -> float:
        return 4.0 * self.quarter_period


def _target(tol: float, value) -> float:
    return max(tol, tol * abs(value))


def _evaluate(f: Integrand, x: np.ndarray, rel_dist: np.ndarray,
              dists=None) -> tuple[np.ndarray, int]:
    """f(x) with non-finite samples zeroed when they sit next to an endpoint."""
    if x.size == 0:
        return np.zeros(0), 0
    fx = np.asarray(f(x) if dists is None else f(x, *dists))
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    bad = ~np.isfinite(fx)
    if bad.any():
        if np.any(rel_dist[bad] > 1e-10):
            where = float(x[bad][np.argmax(rel_dist[bad])])
            raise IntegrandError(f"integrand is not finite at interior point {where!r}")
        fx = np.where(bad, 0.0, fx)
    return fx, x.size


# ---------------------------------------------------------------- tanh-sinh

@lru_cache(maxsize=None)
def _ts_level(level: int):
    """Abscissa offsets and weights of one tanh-sinh refinement level.

    Returns ``(delta, w)`` with ``delta = 1 - tanh(pi/2 sinh t)`` (the
    distance to the nearer endpoint in half-width units) for t >= 0. Level 0
    holds t = 0, 1, 2, ...; level k > 0 holds the odd multiples of 2^-k.
    """
    h = 2.0 ** -level
    n = int(math.ceil(_TS_TMAX / h))
    k = np.arange(0, n + 1) if level == 0 else np.arange(1, n + 1, 2)
    t = k * h
    u = _HALF_PI * np.sinh(t)
    delta = 2.0 / (1.0 + np.exp(2.0 * u))
    w = _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    delta.setflags(write=False)
    w.setflags(write=False)
    return delta, w


def _ts_sum(f: Integrand, a: float, b: float, level: int, outer):
    """Weighted sum of one level, its absolute counterpart and eval count.

    ``outer`` is None, or the original limits (A, B) when the integrand
    wants exact distances ``x - A`` and ``B - x`` as extra arguments.
    """
    half = 0.5 * (b - a)
    width = b - a
    delta, w = _ts_level(level)

    def dists(lo_off, hi_off):
        if outer is None:
            return None
        A, B = outer
        return ((a - A) + lo_off, (B - b) + hi_off)

    if level == 0:
        # centre node counted once
        dl, wl = delta[1:], w[1:]
        mid = np.array([a + half])
        fm, n0 = _evaluate(f, mid, np.ones(1), dists(np.array([half]), np.array([half])))
        s0 = w[0] * fm[0]
        a0 = abs(s0)
    else:
        dl, wl = delta, w
        s0, a0, n0 = 0.0, 0.0, 0
    off = half * dl
    xl = a + off
    xr = b - off
    if outer is None:
        # nodes that round onto an endpoint carry no usable information
        keep_l = xl > a
        keep_r = xr < b
    else:
        # the integrand reads the exact offsets, so x itself may round
        keep_l = keep_r = off > 0.0
    ol = off[keep_l]
    orr = off[keep_r]
    fl, nl = _evaluate(f, xl[keep_l], dl[keep_l], dists(ol, width - ol))
    fr, nr = _evaluate(f, xr[keep_r], dl[keep_r], dists(width - orr, orr))
    tl = wl[keep_l] * fl
    tr = wl[keep_r] * fr
    s = s0 + tl.sum() + tr.sum()
    sabs = a0 + np.abs(tl).sum() + np.abs(tr).sum()
    # magnitude of the outermost contributions bounds the truncation in t
    edge = 0.0
    if tl.size:
        edge = max(edge, abs(tl[-1]))
    if tr.size:
        edge = max(edge, abs(tr[-1]))
    return s, sabs, edge, n0 + nl + nr


def _ts_interval(f: Integrand, a: float, b: float, abs_tol: float, rel_tol: float, outer):
    """Run the level sequence on one interval; no bisection."""
    half = 0.5 * (b - a)
    total = 0.0
    total_abs = 0.0
    n_evals = 0
    prev = None
    err = math.inf
    value = 0.0
    history = []
    rounding = 0.0
    for level in range(_MAX_LEVEL + 1):
        s, sabs, edge, n = _ts_sum(f, a, b, level, outer)
        total = total + s
        total_abs += sabs
        n_evals += n
        h = 2.0 ** -level
        value = half * h * total
        rounding = 8.0 * _EPS * half * h * total_abs
        floor = rounding + half * edge
        if prev is not None:
            err = max(abs(value - prev), floor)
            history.append(err)
            target = max(abs_tol, rel_tol * abs(value))
            if err <= target:
                return value, err, n_evals, True, rounding
            # successive differences stopped shrinking: refinement is useless
            if len(history) >= 3 and history[-1] >= 0.5 * history[-3] and level >= 5:
                break
        prev = value
    return value, err, n_evals, False, rounding


def _ts_adaptive(f: Integrand, a: float, b: float, abs_tol: float, rel_tol: float,
                 depth: int, outer) -> QuadResult:
    value, err, n, ok, rounding = _ts_interval(f, a, b, abs_tol, rel_tol, outer)
    if ok or depth >= _MAX_DEPTH:
        return QuadResult(value, err, n, ok)
    # bisection cannot beat the rounding level of the value or of int |f|
    target = max(abs_tol, rel_tol * abs(value))
    if target < 4.0 * _EPS * abs(value) or err <= 2.0 * rounding:
        return QuadResult(value, err, n, False)
    m = 0.5 * (a + b)
    if not a < m < b:
        return QuadResult(value, err, n, False)
    tgt = 0.5 * max(abs_tol, rel_tol * abs(value))
    left = _ts_adaptive(f, a, m, tgt, 0.0, depth + 1, outer)
    right = _ts_adaptive(f, m, b, tgt, 0.0, depth + 1, outer)
    out = left + right
    return QuadResult(out.value, out.err_est, out.n_evals + n, out.converged)


def integrate_finite(f: Integrand, a: float, b: float,
                     tol: float = DEFAULT_TOL_FINITE, *,
                     distances: bool = False) -> QuadResult:
    """Integrate ``f`` over the finite interval [a, b].

    Parameters
    ----------
    f : callable
        Vectorised integrand, never evaluated at ``a`` or ``b`` themselves.
    a, b : float
        Limits with ``a < b``.
    tol : float
        Target ``|error| <= max(tol, tol*|value|)``.
    distances : bool
        If True, ``f`` is called as ``f(x, x - a, b - x)`` with the two
        distances computed from the node offsets rather than by subtracting
        rounded abscissae. Integrands with a singularity at an endpoint need
        this to go below ~sqrt(eps) accuracy.

    Returns
    -------
    QuadResult
        ``converged`` is False when neither refinement nor bisection reached
        the target; the best estimate is still returned.

    Raises
    ------
    IntegrandError
        If ``f`` is not finite at a node away from the endpoints.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    if not tol > 0:
        raise DomainError("tol must be positive")
    return _ts_adaptive(f, a, b, tol, tol, 0, (a, b) if distances else None)


def integrate_pv(f: Integrand, a: float, b: float, pole: float,
                 tol: float = DEFAULT_TOL_PV) -> QuadResult:
    """Principal value of ``int_a^b f(xi) / (pole - xi) dxi``.

    With ``f = 1`` on (-1, 1) the result is ``log((1 + x)/(1 - x))`` at
    ``pole = x``.
    """
    a, b, pole = float(a), float(b), float(pole)
    if not a < b:
        raise DomainError("need a < b")
    width = b - a
    if not (a < pole < b) or min(pole - a, b - pole) < 1e-6 * width:
        raise DomainError("pole must lie inside (a, b), away from the endpoints")
    fp = complex(np.asarray(f(np.array([pole])))[0])
    if fp.imag == 0.0:
        fp = fp.real

    def g(xi):
        return (f(xi) - fp) / (pole - xi)

    logterm = fp * math.log((pole - a) / (b - pole))
    sub_tol = 0.5 * tol
    n_evals = 1
    for _ in range(3):
        left = integrate_finite(g, a, pole, sub_tol)
        right = integrate_finite(g, pole, b, sub_tol)
        n_evals += left.n_evals + right.n_evals
        value = left.value + right.value + logterm
        err = left.err_est + right.err_est + 4 * _EPS * abs(logterm)
        if err <= _target(tol, value):
            return QuadResult(value, err, n_evals, True)
        # the halves met relative targets on values that largely cancel
        scale = abs(left.value) + abs(right.value) + abs(logterm)
        shrink = max(abs(value), 1.0) / max(scale, 1e-300)
        if shrink >= 1.0 or not (left.converged and right.converged):
            break
        sub_tol = 0.5 * tol * shrink
    return QuadResult(value, err, n_evals, False)


# -------------------------------------------------------- oscillatory tails

def _sidi_w(partial: list, psi: list, t: list):
    """Diagonal estimates of Sidi's W algorithm.

    Models ``S_j = S + psi_j * sum_i beta_i t_j^i`` and returns the sequence
    of estimates using 1, 2, ... terms, each from the latest data.
    """
    m = len(partial)
    M = [partial[j] / psi[j] for j in range(m)]
    N = [1.0 / psi[j] for j in range(m)]
    out = []
    # column-wise elimination; entry j of column n uses data j ... j+n
    for n in range(1, m):
        M = [(M[j + 1] - M[j]) / (t[j + n] - t[j]) for j in range(m - n)]
        N = [(N[j + 1] - N[j]) / (t[j + n] - t[j]) for j in range(m - n)]
        out.append(M[-1] / N[-1] if N[-1] != 0 else math.nan)
    return out


def _sample_points(max_segments: int) -> list[int]:
    """Segment counts growing by about 1.4 at which partial sums are used.

    Feeding every partial sum to the W transform makes the abscissae
    ``1/x`` crowd together and the divided differences blow up rounding
    noise once the period integrals stop alternating; geometric sampling
    keeps the extrapolation well conditioned.
    """
    ks, v = [], 2.0
    while v <= max_segments:
        k = int(round(v))
        if not ks or k > ks[-1]:
            ks.append(k)
        v *= _SAMPLE_RATIO
    return ks


def integrate_osc_tail(f: Integrand, spec: OscTailSpec | None = None,
                       tol: float = DEFAULT_TOL_OSC) -> QuadResult:
    """Conditionally convergent ``lim_{M->inf} int_start^M f(x) dx``.

    Each full period is one segment. Partial sums after k segments, with k
    on a geometric grid, are extrapolated with remainder estimates
    ``x_k * a_k`` (``a_k`` the last segment integral) against ``t = 1/x``.
    This converges for envelopes ``x^-p`` with any ``p > 0``.

    Raises
    ------
    ConvergenceError
        If the period integrals do not decay, i.e. the integral diverges.
    """
    spec = spec or OscTailSpec()
    if not tol > 0:
        raise DomainError("tol must be positive")
    period = spec.period
    seg_tol = max(1e-15, tol / (10.0 * spec.max_segments))
    x0 = spec.start
    samples = set(_sample_points(spec.max_segments))
    partial, psi, tvar, seg_vals = [], [], [], []
    running = 0.0
    seg_err = 0.0
    n_evals = 0
    estimates = []
    best = (math.nan, math.inf)
    for k in range(spec.max_segments):
        lo = x0 + k * period
        hi = x0 + (k + 1) * period
        r = integrate_finite(f, lo, hi, seg_tol)
        n_evals += r.n_evals
        seg_err += r.err_est
        running = running + r.value
        seg_vals.append(r.value)
        if k == 1 and all(abs(v) <= seg_tol for v in seg_vals):
            # identically zero (or numerically so) integrand
            return QuadResult(running, seg_err, n_evals, seg_err <= tol)
        if k >= 8:
            env = [abs(v) for v in seg_vals[-8:]]
            if all(env[i + 1] > 1.05 * env[i] for i in range(7)) and env[-1] > 1e3 * tol:
                raise ConvergenceError("oscillatory integrand envelope is growing")
        if k >= 16:
            # period integrals of a convergent tail shrink; flat ones mean divergence
            recent = sum(abs(v) for v in seg_vals[-8:])
            before = sum(abs(v) for v in seg_vals[-16:-8])
            if recent >= 0.999 * before and recent > 8e3 * tol:
                raise ConvergenceError("period integrals do not decay; the integral diverges")
        if k + 1 not in samples or r.value == 0:
            continue
        partial.append(running)
        psi.append(hi * r.value)
        tvar.append(1.0 / hi)
        if len(partial) < 3:
            continue
        window = slice(max(0, len(partial) - _W_WINDOW), None)
        est = _sidi_w(partial[window], psi[window], tvar[window])[-1]
        estimates.append(est)
        if len(estimates) >= 3:
            d1 = abs(estimates[-1] - estimates[-2])
            d2 = abs(estimates[-2] - estimates[-3])
            err = max(d1, d2) + seg_err
            if err < best[1]:
                best = (est, err)
            if max(d1, d2) < tol:
                return QuadResult(est, err, n_evals, err <= _target(tol, est))
    value, err = best
    if not np.isfinite(value):
        value, err = running, math.inf
    return QuadResult(value, err, n_evals, False)


# -------------------------------------------------------------- exp-sinh

@lru_cache(maxsize=None)
def _es_level(level: int):
    """Offsets ``x - a`` and weights of one exp-sinh level."""
    h = 2.0 ** -level
    kmin = int(math.floor(_ES_TMIN / h))
    kmax = int(math.ceil(_ES_TMAX / h))
    k = np.arange(kmin, kmax + 1)
    if level > 0:
        k = k[k % 2 != 0]
    t = k * h
    s = np.exp(_HALF_PI * np.sinh(t))
    w = _HALF_PI * np.cosh(t) * s
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


def _check_tail(f: Integrand, a: float) -> int:
    """Reject integrands whose ``x f(x)`` does not die out at large x."""
    xs = a + np.logspace(1, 15, 15)
    fx = np.asarray(f(xs))
    if fx.shape != xs.shape:
        fx = np.broadcast_to(fx, xs.shape)
    v = np.abs(xs * np.where(np.isfinite(fx), fx, np.inf))
    if not np.all(np.isfinite(v[-4:])):
        raise ConvergenceError("integrand tail is not finite")
    scale = max(float(np.max(v[np.isfinite(v)], initial=0.0)), 1e-300)
    if np.max(v[-4:]) > 1e-3 * scale and np.max(v[-4:]) > 1e-12:
        raise ConvergenceError("integrand tail does not decay")
    return xs.size


def integrate_decaying(f: Integrand, a: float = 0.0,
                       tol: float = DEFAULT_TOL_DECAYING) -> QuadResult:
    """Integrate ``f`` over [a, inf) with the exp-sinh substitution.

    ``x = a + exp(pi/2 sinh t)`` clusters nodes at ``a`` (integrable
    singularities are allowed there) and spreads them doubly exponentially
    towards infinity, so exponential and ``x^-2``-or-faster algebraic decay
    are both handled. Integrands involving I or K at large argument should
    be written with the scaled variants.

    Raises
    ------
    ConvergenceError
        If sampling shows that ``x f(x)`` does not tend to zero.
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError("lower limit must be finite")
    if not tol > 0:
        raise DomainError("tol must be positive")
    n_evals = _check_tail(f, a)
    total = 0.0
    total_abs = 0.0
    prev = None
    err = math.inf
    value = 0.0
    history = []
    for level in range(_MAX_LEVEL + 1):
        s, w = _es_level(level)
        x = a + s
        keep = x > a
        rel = np.where(s < 1.0, s, 1.0)
        fx, n = _evaluate(f, x[keep], rel[keep])
        n_evals += n
        terms = w[keep] * fx
        total = total + terms.sum()
        total_abs += np.abs(terms).sum()
        h = 2.0 ** -level
        value = h * total
        edge = h * (abs(terms[-1]) + abs(terms[0])) if terms.size else 0.0
        floor = 8.0 * _EPS * h * total_abs + edge
        if prev is not None:
            err = max(abs(value - prev), floor)
            history.append(err)
            if err <= _target(tol, value):
                return QuadResult(value, err, n_evals, True)
            if len(history) >= 3 and history[-1] >= 0.5 * history[-3] and level >= 5:
                break
        prev = value
    return QuadResult(value, err, n_evals, False)
