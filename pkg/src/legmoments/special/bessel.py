"""Bessel functions J, Y, I, K of real order and positive real argument.

Three regimes, chosen per argument:

* ``x < 2`` (``x < 1`` for I and K): Temme's series for Y_mu / K_mu at reduced order |mu| <= 1/2,
  with the ratio J'/J (I'/I) from a continued fraction and the first kind
  recovered from the Wronskian.
* from there to ``asymptotic_crossover(mu)``: Steed's method, i.e. the same
  ratio continued fraction paired with the complex continued fraction for
  (J' + iY')/(J + iY) (Temme's CF2 for K).
* ``x >= asymptotic_crossover(mu)``: Hankel's large-argument expansion,
  vectorised over the argument array.

The first two regimes run as scalar loops; the asymptotic one is pure numpy,
which is what the oscillatory-tail integrands spend almost all their time in.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import AccuracyError, ConvergenceError, DomainError
from .core import BesselOrder, SpecialValue, _sinpi_real

_EPS = 2.220446049250313e-16
_FPMIN = 1e-300
_MAXIT = 100000
_XMIN = 2.0
_XMIN_IK = 1.0  # CF2 for K is already fast here and avoids Temme round-off

# Taylor coefficients of 1/Gamma(1+z) about z = 0.
_RGAMMA1P = (
    1.0, 0.5772156649015329, -0.6558780715202539, -0.04200263503409524,
    0.16653861138229148, -0.04219773455554433, -0.009621971527876973,
    0.0072189432466631, -0.0011651675918590652, -0.00021524167411495098,
    0.0001280502823881162, -2.013485478078824e-05, -1.2504934821426706e-06,
    1.133027231981696e-06, -2.056338416977607e-07, 6.116095104481416e-09,
    5.002007644469223e-09, -1.18127457048702e-09, 1.0434267116911005e-10,
    7.782263439905071e-12, -3.696805618642206e-12, 5.100370287454476e-13,
    -2.0583260535665066e-14, -5.348122539423018e-15, 1.2267786282382608e-15,
)


def asymptotic_crossover(mu: float) -> float:
    """Argument above which the Hankel expansion is used for order ``mu``."""
    return 20.0 + mu * mu


def _temme_gammas(xmu: float) -> tuple[float, float, float, float]:
    """gam1, gam2, 1/Gamma(1+xmu), 1/Gamma(1-xmu) for |xmu| <= 1/2."""
    even = 0.0
    odd = 0.0
    p = 1.0
    for k, c in enumerate(_RGAMMA1P):
        if k % 2 == 0:
            even += c * p
        else:
            # odd orders enter as c_k * xmu^(k-1)
            odd += c * p
            p *= xmu * xmu
    gam1 = -odd
    gam2 = even
    return gam1, gam2, gam2 - xmu * gam1, gam2 + xmu * gam1


def _cf1_ratio(xnu: float, x: float, sign: float) -> tuple[float, int]:
    """Modified Lentz evaluation of J'_nu/J_nu (sign=-1) or I'_nu/I_nu (sign=+1).

    Returns ``(h, isign)`` where h = ratio and isign tracks the sign of the
    denominators (needed to fix the sign of J).
    """
    xi = 1.0 / x
    xi2 = 2.0 * xi
    isign = 1
    h = max(xnu * xi, _FPMIN)
    b = xi2 * xnu
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += xi2
        if sign < 0:
            d = b - d
            if abs(d) < _FPMIN:
                d = _FPMIN
            c = b - 1.0 / c
        else:
            d = b + d
            if abs(d) < _FPMIN:
                d = _FPMIN
            c = b + 1.0 / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0:
            isign = -isign
        if abs(delta - 1.0) < _EPS:
            return h, isign
    raise ConvergenceError(f"Bessel ratio continued fraction failed at nu={xnu}, x={x}")


def _jy_scalar(xnu: float, x: float) -> tuple[float, float]:
    """J_nu(x), Y_nu(x) for nu >= 0, 0 < x (Temme / Steed)."""
    nl = int(xnu + 0.5) if x < _XMIN else max(0, int(xnu - x + 1.5))
    xmu = xnu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi
    h, isign = _cf1_ratio(xnu, x, -1.0)
    rjl = isign * _FPMIN
    rjpl = h * rjl
    rjl1 = rjl
    rjp1 = rjpl
    fact = xnu * xi
    # ratio J_{xmu+1}/J_{xmu}, kept separately: forming it as xmu/x - J'/J
    # cancels catastrophically for negative reduced order and small x
    ratio = xnu * xi - h
    for _ in range(nl, 0, -1):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        ratio = rjl / rjtemp if rjtemp != 0.0 else ratio
        rjl = rjtemp
    if rjl == 0.0:
        rjl = _EPS
    f = rjpl / rjl
    if x < _XMIN:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = 2.0 / math.pi * fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        pimu2 = 0.5 * pimu
        fact3 = 1.0 if abs(pimu2) < _EPS else math.sin(pimu2) / pimu2
        r = math.pi * pimu2 * fact3 * fact3
        c = 1.0
        d = -x2 * x2
        total = ff + r * q
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * (ff + r * q)
            total += delta
            del1 = c * p - i * delta
            total1 += del1
            if abs(delta) < (1.0 + abs(total)) * _EPS:
                break
        else:
            raise ConvergenceError(f"Temme series failed at nu={xnu}, x={x}")
        rymu = -total
        ry1 = -total1 * xi2
        rjmu = w / (ratio * rymu - ry1)
    else:
        # complex continued fraction for p + iq = (J' + iY')/(J + iY)
        a = 0.25 - xmu2
        pq = complex(-0.5 * xi, 1.0)
        b = complex(2.0 * x, 2.0)
        fact = a * xi / (pq.real ** 2 + pq.imag ** 2)
        cc = b + complex(pq.imag * fact, pq.real * fact)
        dd = 1.0 / b
        dl = cc * dd
        pq = pq * dl
        for i in range(2, _MAXIT):
            a += 2 * (i - 1)
            b += 2j
            dd = a * dd + b
            if abs(dd.real) + abs(dd.imag) < _FPMIN:
                dd = complex(_FPMIN, 0.0)
            fact = a / (cc.real ** 2 + cc.imag ** 2)
            cc = b + complex(cc.real * fact, -cc.imag * fact)
            if abs(cc.real) + abs(cc.imag) < _FPMIN:
                cc = complex(_FPMIN, 0.0)
            dd = 1.0 / dd
            dl = cc * dd
            pq = pq * dl
            if abs(dl.real - 1.0) + abs(dl.imag) < _EPS:
                break
        else:
            raise ConvergenceError(f"Steed continued fraction failed at nu={xnu}, x={x}")
        p, q = pq.real, pq.imag
        gam = (p - f) / q
        rjmu = math.sqrt(w / ((p - f) * gam + q))
        rjmu = math.copysign(rjmu, rjl)
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = xmu * xi * rymu - rymup
    fact = rjmu / rjl
    rj = rjl1 * fact
    for i in range(1, nl + 1):
        rytemp = (xmu + i) * xi2 * ry1 - rymu
        rymu = ry1
        ry1 = rytemp
    return rj, rymu


def _ik_scalar(xnu: float, x: float) -> tuple[float, float]:
    """Scaled pair I_nu(x) e^-x, K_nu(x) e^x for nu >= 0, x > 0."""
    nl = int(xnu + 0.5)
    xmu = xnu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    h, _ = _cf1_ratio(xnu, x, 1.0)
    ril = _FPMIN
    ripl = h * ril
    ril1 = ril
    fact = xnu * xi
    ratio = h - xnu * xi  # I_{xmu+1}/I_{xmu}, see the note in _jy_scalar
    for _ in range(nl, 0, -1):
        ritemp = fact * ril + ripl
        fact -= xi
        ripl = fact * ritemp + ril
        ratio = ril / ritemp
        ril = ritemp
    if x < _XMIN_IK:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * _EPS:
                break
        else:
            raise ConvergenceError(f"Temme series failed at nu={xnu}, x={x}")
        ex = math.exp(x)
        rkmu = total * ex
        rk1 = total1 * xi2 * ex
    else:
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1 = 0.0
        q2 = 1.0
        a1 = 0.25 - xmu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, _MAXIT):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1 = q2
            q2 = qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < _EPS:
                break
        else:
            raise ConvergenceError(f"Temme CF2 failed at nu={xnu}, x={x}")
        h = a1 * h
        rkmu = math.sqrt(math.pi / (2.0 * x)) / s
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi
    rimu = xi / (ratio * rkmu + rk1)
    ri = rimu * ril1 / ril
    for i in range(1, nl + 1):
        rktemp = (xmu + i) * xi2 * rk1 + rkmu
        rkmu = rk1
        rk1 = rktemp
    return ri, rkmu


def _hankel_coefficients(mu: float, kmax: int) -> list[float]:
    """a_k(mu) = prod_{j=1..k} (4 mu^2 - (2j-1)^2) / (k! 8^k)."""
    m4 = 4.0 * mu * mu
    out = [1.0]
    a = 1.0
    for k in range(1, kmax + 1):
        a *= (m4 - (2 * k - 1) ** 2) / (k * 8.0)
        out.append(a)
    return out


def _asymptotic_series(mu: float, x: np.ndarray, alternate: bool):
    """Sum a_k(mu) (+-1)^k / x^k with per-element optimal truncation.

    Returns (sum_even, sum_odd, last_term_magnitude); for ``alternate`` the
    even/odd split feeds Hankel's P and Q, otherwise only the plain sum is
    meaningful (sum_even + sum_odd).
    """
    coeffs = _hankel_coefficients(mu, 80)
    ix = 1.0 / x
    even = np.zeros_like(x)
    odd = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    prev = np.full(x.shape, np.inf)
    last = np.zeros_like(x)
    p = np.ones_like(x)
    for k, a in enumerate(coeffs):
        term = a * p
        mag = np.abs(term)
        if k > 2 * abs(mu) + 2:
            # optimal truncation; earlier terms can dip where 4mu^2 ~ (2j-1)^2
            active &= mag < prev
        if not active.any():
            break
        sgn = (-1.0) ** (k // 2) if alternate else 1.0
        if k % 2 == 0:
            even = np.where(active, even + sgn * term, even)
        else:
            odd = np.where(active, odd + sgn * term, odd)
        last = np.where(active, mag, last)
        active &= mag > _EPS * 1e-2 * (np.abs(even) + np.abs(odd))
        prev = mag
        p = p * ix if alternate else p * (-ix)
    return even, odd, last


def _jy_asymptotic(mu: float, x: np.ndarray):
    P, Q, last = _asymptotic_series(mu, x, alternate=True)
    phi = (0.5 * mu + 0.25) * math.pi
    cphi, sphi = math.cos(phi), math.sin(phi)
    cx, sx = np.cos(x), np.sin(x)
    cchi = cx * cphi + sx * sphi  # cos(x - phi)
    schi = sx * cphi - cx * sphi  # sin(x - phi)
    amp = np.sqrt(2.0 / (math.pi * x))
    J = amp * (P * cchi - Q * schi)
    Y = amp * (P * schi + Q * cchi)
    # argument reduction in cos/sin loses about eps * x in the phase
    err = amp * (last + _EPS * (16.0 + x) * (np.abs(P) + np.abs(Q)))
    return J, Y, err


def _ik_asymptotic(mu: float, x: np.ndarray):
    """Scaled I e^-x and K e^x from the large-argument expansion."""
    ev, od, last = _asymptotic_series(mu, x, alternate=False)
    # with p *= -1/x the odd terms already carry the (-1)^k sign of I's series
    isum = ev + od
    ksum = ev - od
    Ie = isum / np.sqrt(2.0 * math.pi * x)
    Ke = ksum * np.sqrt(math.pi / (2.0 * x))
    return Ie, Ke, last / np.sqrt(2.0 * math.pi * x), last * np.sqrt(math.pi / (2.0 * x))


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _split(mu: float, x: np.ndarray):
    big = x >= asymptotic_crossover(mu)
    return big, ~big


def jy(mu: float, x):
    """J_mu(x) and Y_mu(x) for mu >= 0, x > 0 (array in, arrays out)."""
    if mu < 0:
        raise DomainError("jy requires mu >= 0")
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if np.any(flat <= 0) or not np.all(np.isfinite(flat)):
        raise DomainError("jy requires finite x > 0")
    J = np.empty_like(flat)
    Y = np.empty_like(flat)
    E = np.empty_like(flat)
    big, small = _split(mu, flat)
    if big.any():
        J[big], Y[big], E[big] = _jy_asymptotic(mu, flat[big])
    for i in np.flatnonzero(small):
        j, y = _jy_scalar(mu, float(flat[i]))
        J[i], Y[i] = j, y
        E[i] = (64.0 + flat[i]) * _EPS * math.hypot(j, y)
    shape = arr.shape
    if scalar:
        return float(J[0]), float(Y[0]), float(E[0])
    return J.reshape(shape), Y.reshape(shape), E.reshape(shape)


def bessel_j(mu: float, x):
    """J_mu(x) for mu >= 0 and x >= 0."""
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if np.any(flat < 0):
        raise DomainError("bessel_j requires x >= 0")
    out = np.empty_like(flat)
    zero = flat == 0
    out[zero] = 1.0 if mu == 0 else 0.0
    if (~zero).any():
        out[~zero] = np.atleast_1d(jy(mu, flat[~zero])[0])
    return float(out[0]) if scalar else out.reshape(arr.shape)


def bessel_y(mu: float, x):
    """Y_mu(x) for mu >= 0 and x > 0."""
    return jy(mu, x)[1]


def _ik_nonneg(mu: float, flat: np.ndarray):
    Ie = np.empty_like(flat)
    Ke = np.empty_like(flat)
    Ei = np.empty_like(flat)
    Ek = np.empty_like(flat)
    big, small = _split(mu, flat)
    if big.any():
        Ie[big], Ke[big], Ei[big], Ek[big] = _ik_asymptotic(mu, flat[big])
    for i in np.flatnonzero(small):
        a, b = _ik_scalar(mu, float(flat[i]))
        Ie[i], Ke[i] = a, b
        Ei[i] = 64 * _EPS * a
        Ek[i] = 64 * _EPS * b
    return Ie, Ke, Ei + 4 * _EPS * Ie, Ek + 4 * _EPS * Ke


def ik_scaled(mu: float, x):
    """Exponentially scaled I_mu(x) e^-x and K_mu(x) e^x for mu >= -1/2, x > 0.

    Negative orders use I_{-m} = I_m + (2/pi) sin(m pi) K_m and K_{-m} = K_m.
    Returns ``(Ie, Ke, err_I, err_K)``.
    """
    if mu < -0.5:
        raise DomainError("ik_scaled requires mu >= -1/2")
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if np.any(flat <= 0) or not np.all(np.isfinite(flat)):
        raise DomainError("ik_scaled requires finite x > 0")
    m = abs(mu)
    Ie, Ke, Ei, Ek = _ik_nonneg(m, flat)
    if mu < 0:
        s = 2.0 / math.pi * _sinpi_real(m)
        corr = s * Ke * np.exp(-2.0 * flat)
        Ie = Ie + corr
        Ei = Ei + abs(s) * Ek * np.exp(-2.0 * flat)
    if scalar:
        return float(Ie[0]), float(Ke[0]), float(Ei[0]), float(Ek[0])
    shape = arr.shape
    return Ie.reshape(shape), Ke.reshape(shape), Ei.reshape(shape), Ek.reshape(shape)


def bessel_i(mu: float, x, scaled: bool = False):
    """I_mu(x) (or I_mu(x) e^-x when ``scaled``) for mu >= -1/2, x >= 0."""
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if np.any(flat < 0):
        raise DomainError("bessel_i requires x >= 0")
    out = np.empty_like(flat)
    zero = flat == 0
    if zero.any():
        if mu == 0:
            out[zero] = 1.0
        elif mu > 0:
            out[zero] = 0.0
        else:
            raise DomainError("I_mu(0) is infinite for negative non-integer mu")
    pos = ~zero
    if pos.any():
        Ie = np.atleast_1d(ik_scaled(mu, flat[pos])[0])
        if scaled:
            out[pos] = Ie
        else:
            xp = flat[pos]
            with np.errstate(over="ignore"):
                v = Ie * np.exp(xp)
            if not np.all(np.isfinite(v)):
                raise OverflowError("I_mu(x) exceeds the floating-point range; use scaled=True")
            out[pos] = v
    return float(out[0]) if scalar else out.reshape(arr.shape)


def bessel_k(mu: float, x, scaled: bool = False):
    """K_mu(x) (or K_mu(x) e^x when ``scaled``) for mu >= -1/2, x > 0."""
    arr, scalar = _as_array(x)
    Ke = np.atleast_1d(ik_scaled(mu, arr.reshape(-1))[1])
    out = Ke if scaled else Ke * np.exp(-arr.reshape(-1))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def _check_tol(value, err, tol, what):
    if tol is None:
        return
    bound = tol * np.maximum(1.0, np.abs(value))
    if np.any(err > bound):
        raise AccuracyError(f"{what}: error estimate exceeds requested tolerance {tol:g}")


def bessel_cyl(order: BesselOrder, x, tol: float | None = None) -> SpecialValue:
    """J or Y of the given order with an error estimate."""
    if order.kind not in ("J", "Y"):
        raise DomainError("bessel_cyl handles kinds J and Y")
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if order.kind == "J":
        val = np.atleast_1d(bessel_j(order.mu, flat)).astype(float)
        err = np.zeros_like(val)
        pos = flat > 0
        if pos.any():
            err[pos] = np.atleast_1d(jy(order.mu, flat[pos])[2])
    else:
        if np.any(flat <= 0):
            raise DomainError("Y_mu(x) requires x > 0")
        _, val, err = (np.atleast_1d(t) for t in jy(order.mu, flat))
    _check_tol(val, err, tol, f"{order.kind}_{order.mu}")
    if scalar:
        return SpecialValue(float(val[0]), float(err[0]))
    return SpecialValue(val.reshape(arr.shape), err.reshape(arr.shape))


def bessel_mod(order: BesselOrder, x, tol: float | None = None) -> SpecialValue:
    """I or K (optionally exponentially scaled) with an error estimate."""
    if order.kind not in ("I", "K"):
        raise DomainError("bessel_mod handles kinds I and K")
    arr, scalar = _as_array(x)
    flat = arr.reshape(-1)
    if order.kind == "I":
        val = np.atleast_1d(bessel_i(order.mu, flat, scaled=order.scaled))
        pos = flat > 0
        err = np.zeros_like(val)
        if pos.any():
            _, _, ei, _ = ik_scaled(order.mu, flat[pos])
            ei = np.atleast_1d(ei)
            err[pos] = ei if order.scaled else ei * np.exp(flat[pos])
    else:
        if np.any(flat <= 0):
            raise DomainError("K_mu(x) requires x > 0")
        _, ke, _, ek = (np.atleast_1d(t) for t in ik_scaled(order.mu, flat))
        val = ke if order.scaled else ke * np.exp(-flat)
        err = ek if order.scaled else ek * np.exp(-flat)
    _check_tol(val, err, tol, f"{order.kind}_{order.mu}")
    if scalar:
        return SpecialValue(float(val[0]), float(err[0]))
    return SpecialValue(val.reshape(arr.shape), err.reshape(arr.shape))
