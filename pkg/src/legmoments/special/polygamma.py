"""Polygamma functions psi^(m), m in {0, 1, 2}, for complex argument.

Upward recurrence moves the argument into the region where the
Bernoulli-number asymptotic series converges to double precision.
"""
from __future__ import annotations

import cmath
import math

from ..errors import AccuracyError, DomainError
from .core import SpecialValue

# B_2k for k = 1..10
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0,
)
ASYMPTOTIC_RADIUS = 12.0
_EPS = 2.220446049250313e-16


def _asymptotic(m: int, w: complex) -> tuple[complex, float]:
    iw = 1.0 / w
    iw2 = iw * iw
    if m == 0:
        s = cmath.log(w) - 0.5 * iw
        terms = [B / (2 * k) * iw2 ** k for k, B in enumerate(_BERNOULLI, 1)]
        tail = -sum(terms)
    elif m == 1:
        s = iw + 0.5 * iw2
        terms = [B * iw ** (2 * k + 1) for k, B in enumerate(_BERNOULLI, 1)]
        tail = sum(terms)
    else:
        s = -iw2 - iw2 * iw
        terms = [(2 * k + 1) * B * iw ** (2 * k + 2) for k, B in enumerate(_BERNOULLI, 1)]
        tail = -sum(terms)
    return s + tail, abs(terms[-1]) + _EPS * (abs(s) + abs(tail))


def polygamma(m: int, z, tol: float | None = None) -> SpecialValue:
    """m-th derivative of the digamma function.

    Parameters
    ----------
    m : int
        Order, one of 0, 1, 2.
    z : float or complex
        Argument; must not be a nonpositive integer.
    tol : float, optional
        Relative accuracy demanded (against ``max(1, |value|)``).  An
        :class:`AccuracyError` is raised when the error estimate exceeds it.

    Returns
    -------
    SpecialValue
        Real-valued for real ``z``.
    """
    if m not in (0, 1, 2):
        raise DomainError(f"polygamma order must be 0, 1 or 2, got {m}")
    real_input = not isinstance(z, complex) or z.imag == 0.0
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError("polygamma argument must be finite")
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        raise DomainError(f"polygamma has a pole at z = {w.real}")

    # psi^(m)(w) = psi^(m)(w + 1) - (-1)^m m! / w^(m+1)
    shift = 0j
    shift_mag = 0.0
    fact = (-1.0) ** m * math.factorial(m)
    while not (w.real >= ASYMPTOTIC_RADIUS or (w.real >= 0.0 and abs(w) >= ASYMPTOTIC_RADIUS)):
        t = fact / w ** (m + 1)
        shift -= t
        shift_mag += abs(t)
        w += 1.0
    value, err = _asymptotic(m, w)
    value += shift
    err += 4 * _EPS * (shift_mag + abs(value))
    if tol is not None and err > tol * max(1.0, abs(value)):
        raise AccuracyError(
            f"polygamma({m}, {z}) error estimate {err:.2e} exceeds requested {tol:.2e}")
    if real_input:
        return SpecialValue(value.real, err)
    return SpecialValue(value, err)


def digamma(z):
    return polygamma(0, z).value


def trigamma(z):
    return polygamma(1, z).value


def tetragamma(z):
    return polygamma(2, z).value
