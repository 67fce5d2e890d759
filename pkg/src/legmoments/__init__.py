"""Numerical verification of quartic Legendre moment identities.

Subpackages
-----------
special
    Polygamma, Bessel and Legendre functions with error estimates.
quadrature
    Double-exponential rules for finite, principal-value, oscillatory and
    decaying integrals.
identities
    The identity catalog, its closed forms and the verification engine.
asymptotics
    Large-degree and near-integer checks.
"""
__version__ = "0.1.0"

from .errors import (AccuracyError, ConvergenceError, DomainError, IntegrandError,
                     LegMomentsError, UnknownIdentityError)

__all__ = ["__version__", "AccuracyError", "ConvergenceError", "DomainError", "IntegrandError",
           "LegMomentsError", "UnknownIdentityError"]
