"""Right-hand sides of the quartic moment identities A and B, extended by continuity.

Both closed forms carry a prefactor ``sin(nu pi)**k / (2nu+1)**2`` against a
bracket of polygamma values at ``nu + 1`` and ``-nu``. Taken literally they
are 0/0 at ``nu = -1/2`` and inf*0 at the integers. Two rewrites remove this:

* The reflection ``psi^(m)(-nu) = psi^(m)(nu+1) + pi d^m/dnu^m cot(nu pi)``
  (up to sign) folds the pole of ``psi^(m)(-nu)`` into an explicit
  trigonometric term, leaving a form that is regular at every integer with
  ``Re nu >= -1/2``. Both sides are symmetric under ``nu -> -nu-1``, so
  degrees with ``Re nu < -1/2`` are reflected first.
* At ``nu = -1/2`` the remaining 0/0 is resolved by polynomial
  extrapolation in ``eps**2`` (``eps = nu + 1/2``) from real samples, which
  is Richardson's scheme carried to several levels; evenness in ``eps``
  makes odd powers vanish.

The literal formula is used away from the guard bands, except within 0.02
of -1/2 where the same extrapolant (now interpolating) is more accurate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..special.core import EULER_GAMMA, LOG2, ZETA3, Degree, SpecialValue, cospi, sinpi
from ..special.polygamma import polygamma

GUARD_BAND = 1e-4
BRANCHES = ("generic", "near_integer_limit", "near_minus_half_limit")

_EPS = 2.220446049250313e-16
_PI = math.pi
# extrapolation nodes eps = k*h for k = 1..4
_LIMIT_STEP = 0.01
_LIMIT_NODES = 4
# below this |nu + 1/2| the literal form loses more than ~1e-11 to cancellation
_INTERP_RADIUS = 0.02


@dataclass(frozen=True)
class ClosedFormContext:
    """Which evaluation branch a degree falls into."""

    nu: Degree
    branch: str

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise DomainError(f"unknown branch {self.branch!r}")
        if self.branch == "generic" and _band_distance(self.nu.value) <= GUARD_BAND:
            raise DomainError("generic branch needs distance > 1e-4 from Z and -1/2")

    @classmethod
    def of(cls, nu) -> "ClosedFormContext":
        d = Degree.of(nu)
        v = d.value
        if abs(v + 0.5) <= GUARD_BAND:
            return cls(d, "near_minus_half_limit")
        if d.distance_to_integer() <= GUARD_BAND:
            return cls(d, "near_integer_limit")
        return cls(d, "generic")


def _band_distance(nu: complex) -> float:
    return min(abs(nu + 0.5), abs(nu - round(nu.real)))


def _fold(nu: complex) -> complex:
    return -nu - 1.0 if nu.real < -0.5 else nu


def _a_literal(nu: complex) -> SpecialValue:
    s = complex(sinpi(nu))
    p1 = polygamma(2, nu + 1.0)
    p2 = polygamma(2, -nu)
    br = complex(p1.value) + complex(p2.value) + 28.0 * ZETA3
    pre = 2.0 * s ** 4 / ((2.0 * nu + 1.0) ** 2 * _PI ** 4)
    val = pre * br
    err = abs(pre) * (p1.abs_err + p2.abs_err + 8 * _EPS * (abs(complex(p1.value)) + abs(complex(p2.value)) + 28.0 * ZETA3))
    return SpecialValue(val, err + 8 * _EPS * abs(val))


def _a_regular(nu: complex) -> SpecialValue:
    nu = _fold(nu)
    s = complex(sinpi(nu))
    c = complex(cospi(nu))
    p = polygamma(2, nu + 1.0)
    head = s ** 4 * (2.0 * complex(p.value) + 28.0 * ZETA3)
    val = 2.0 * (head + 2.0 * _PI ** 3 * s * c) / ((2.0 * nu + 1.0) ** 2 * _PI ** 4)
    scale = abs(s) ** 4 * (2.0 * abs(complex(p.value)) + 28.0 * ZETA3) + 2.0 * _PI ** 3 * abs(s * c)
    err = 2.0 * (abs(s) ** 4 * 2.0 * p.abs_err + 8 * _EPS * scale) / (abs(2.0 * nu + 1.0) ** 2 * _PI ** 4)
    return SpecialValue(val, err)


def _b_literal(nu: complex) -> SpecialValue:
    s = complex(sinpi(nu))
    p1 = polygamma(0, nu + 1.0)
    p2 = polygamma(0, -nu)
    br = 0.5 * (complex(p1.value) + complex(p2.value)) + EULER_GAMMA + 2.0 * LOG2
    pre = 4.0 * s ** 2 / ((2.0 * nu + 1.0) ** 2 * _PI ** 2)
    val = pre * br
    err = abs(pre) * (0.5 * (p1.abs_err + p2.abs_err) + 8 * _EPS * (abs(complex(p1.value)) + abs(complex(p2.value)) + 2.0))
    return SpecialValue(val, err + 8 * _EPS * abs(val))


def _b_regular(nu: complex) -> SpecialValue:
    nu = _fold(nu)
    s = complex(sinpi(nu))
    c = complex(cospi(nu))
    p = polygamma(0, nu + 1.0)
    br = complex(p.value) + EULER_GAMMA + 2.0 * LOG2
    val = (4.0 * s ** 2 * br + 2.0 * _PI * s * c) / ((2.0 * nu + 1.0) ** 2 * _PI ** 2)
    scale = 4.0 * abs(s) ** 2 * (abs(complex(p.value)) + 2.0) + 2.0 * _PI * abs(s * c)
    err = (4.0 * abs(s) ** 2 * p.abs_err + 8 * _EPS * scale) / (abs(2.0 * nu + 1.0) ** 2 * _PI ** 2)
    return SpecialValue(val, err)


def _even_limit(regular, nu: complex) -> SpecialValue:
    """Value at ``nu`` near -1/2 from an even extrapolant in ``eps**2``."""
    eps = nu + 0.5
    target = eps * eps
    ts, fs, es = [], [], []
    for k in range(1, _LIMIT_NODES + 1):
        e = k * _LIMIT_STEP
        sv = regular(complex(-0.5 + e))
        ts.append(e * e)
        fs.append(complex(sv.value))
        es.append(sv.abs_err)
    # Neville's scheme evaluated at eps**2
    table = list(fs)
    prev_top = table[0]
    for level in range(1, len(ts)):
        prev_top = table[0]
        for i in range(len(ts) - level):
            table[i] = ((target - ts[i + level]) * table[i] - (target - ts[i]) * table[i + 1]) / (ts[i] - ts[i + level])
    val = table[0]
    # last correction as truncation estimate; sum of abs Lagrange weights at 0 is ~2.7
    err = abs(val - prev_top) + 3.0 * max(es)
    return SpecialValue(val, err)


def _collapse(sv: SpecialValue, nu: complex) -> SpecialValue:
    v = complex(sv.value)
    if nu.imag == 0.0:
        return SpecialValue(v.real, sv.abs_err)
    return SpecialValue(v, sv.abs_err)


def _evaluate(regular, literal, ctx: ClosedFormContext) -> SpecialValue:
    nu = ctx.nu.value
    if ctx.branch == "near_minus_half_limit" or abs(nu + 0.5) < _INTERP_RADIUS:
        return _collapse(_even_limit(regular, nu), nu)
    if ctx.branch == "near_integer_limit":
        return _collapse(regular(nu), nu)
    return _collapse(literal(nu), nu)


def a_right(nu) -> SpecialValue:
    """Closed form of ``int_{-1}^1 x P_nu(x)**4 dx`` for any complex degree.

    ``2 sin^4(nu pi) [psi''(nu+1) + psi''(-nu) + 28 zeta(3)] / ((2nu+1)^2 pi^4)``
    away from the guard bands, its continuous extension inside them.
    """
    return _evaluate(_a_regular, _a_literal, ClosedFormContext.of(nu))


def b_right(nu) -> SpecialValue:
    """Closed form of ``int_0^1 x P_nu^2 (P_nu^2 - P_nu(-x)^2) dx``.

    ``4 sin^2(nu pi) [(psi(nu+1) + psi(-nu))/2 + gamma + 2 log 2] / ((2nu+1)^2 pi^2)``
    away from the guard bands, its continuous extension inside them.
    """
    return _evaluate(_b_regular, _b_literal, ClosedFormContext.of(nu))


def a_right_regular(nu) -> SpecialValue:
    """The pole-free rewrite of :func:`a_right`; undefined only at ``nu = -1/2``."""
    nu = Degree.of(nu).value
    if nu == -0.5:
        raise DomainError("the regular form is 0/0 at nu = -1/2")
    return _collapse(_a_regular(nu), nu)


def b_right_regular(nu) -> SpecialValue:
    """The pole-free rewrite of :func:`b_right`; undefined only at ``nu = -1/2``."""
    nu = Degree.of(nu).value
    if nu == -0.5:
        raise DomainError("the regular form is 0/0 at nu = -1/2")
    return _collapse(_b_regular(nu), nu)


def closed_form_limit(identity: str, nu) -> SpecialValue:
    """Continuity-extended right-hand side of A or B inside a guard band.

    Parameters
    ----------
    identity : {"A", "B"}
    nu : Degree or number
        Must lie within 1e-4 of an integer or of -1/2.
    """
    key = identity.upper()
    if key not in ("A", "B"):
        raise DomainError("closed_form_limit is defined for identities A and B only")
    ctx = ClosedFormContext.of(nu)
    if ctx.branch == "generic":
        raise DomainError(f"nu = {ctx.nu.value} is outside the 1e-4 guard bands")
    if key == "A":
        return _evaluate(_a_regular, _a_literal, ctx)
    return _evaluate(_b_regular, _b_literal, ctx)
