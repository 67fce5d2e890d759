"""Value containers, degree/order types and exact-at-integer trigonometry."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import DomainError

EULER_GAMMA = 0.57721566490153286061
ZETA3 = 1.2020569031595942854
ZETA5 = 1.0369277551433699263
LOG2 = 0.69314718055994530942

Number = Union[float, complex]


@dataclass(frozen=True)
class SpecialValue:
    """A function value with an absolute error estimate.

    ``value`` may be a scalar or an ndarray; ``abs_err`` has the same shape.
    """

    value: Number | np.ndarray
    abs_err: float | np.ndarray

    def __complex__(self) -> complex:
        return complex(self.value)

    def __float__(self) -> float:
        v = complex(self.value)
        if v.imag != 0.0:
            raise TypeError("complex value cannot be converted to float")
        return v.real


@dataclass(frozen=True)
class Degree:
    """Complex Legendre degree ``nu = re + i*im``."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"degree must be finite, got {self.re!r}+{self.im!r}i")

    @classmethod
    def of(cls, nu: "Degree | Number") -> "Degree":
        if isinstance(nu, Degree):
            return nu
        z = complex(nu)
        return cls(z.real, z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def reflected(self) -> "Degree":
        """The degree -nu-1, which leaves P_nu unchanged."""
        return Degree(-self.re - 1.0, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0.0

    def distance_to_integer(self) -> float:
        return abs(complex(self.re - round(self.re), self.im))


BESSEL_KINDS = ("J", "Y", "I", "K")


@dataclass(frozen=True)
class BesselOrder:
    mu: float
    kind: str
    scaled: bool = False

    def __post_init__(self):
        if self.kind not in BESSEL_KINDS:
            raise DomainError(f"unknown Bessel kind {self.kind!r}")
        if not math.isfinite(self.mu):
            raise DomainError("Bessel order must be finite")
        if self.scaled and self.kind in ("J", "Y"):
            raise DomainError("scaling is defined only for I and K")
        if self.kind in ("J", "Y") and self.mu < 0:
            raise DomainError("J and Y are supported for mu >= 0 only")
        if self.kind in ("I", "K") and self.mu < -0.5:
            raise DomainError("I and K are supported for mu >= -1/2 only")


def _sinpi_real(a: float) -> float:
    r = math.fmod(a, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    # r in [-1, 1]; fold onto [-1/2, 1/2] with sin(pi*r) = sin(pi*(sign-r))
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _cospi_real(a: float) -> float:
    return _sinpi_real(a + 0.5)


def sinpi(nu: Number) -> Number:
    """sin(pi*nu), exactly zero at integers."""
    if isinstance(nu, complex):
        a, b = nu.real, nu.imag
        if b == 0.0:
            return complex(_sinpi_real(a), 0.0)
        return complex(_sinpi_real(a) * math.cosh(math.pi * b),
                       _cospi_real(a) * math.sinh(math.pi * b))
    return _sinpi_real(float(nu))


def cospi(nu: Number) -> Number:
    """cos(pi*nu), exactly zero at half-integers."""
    if isinstance(nu, complex):
        a, b = nu.real, nu.imag
        if b == 0.0:
            return complex(_cospi_real(a), 0.0)
        return complex(_cospi_real(a) * math.cosh(math.pi * b),
                       -_sinpi_real(a) * math.sinh(math.pi * b))
    return _cospi_real(float(nu))


def as_number(nu) -> Number:
    """Collapse a Degree/complex with zero imaginary part to float."""
    if isinstance(nu, Degree):
        nu = nu.value
    z = complex(nu)
    return z.real if z.imag == 0.0 else z

