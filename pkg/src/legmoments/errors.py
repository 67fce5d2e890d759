"""Exception hierarchy shared by every module in the package."""


class LegMomentsError(Exception):
    """Base class for all package errors."""


class DomainError(LegMomentsError, ValueError):
    """Argument outside the mathematical domain (poles, x <= 0 for Y, ...)."""


class AccuracyError(LegMomentsError, ArithmeticError):
    """The requested accuracy cannot be reached by the chosen algorithm."""


class ConvergenceError(AccuracyError):
    """An iterative procedure (series, continued fraction, extrapolation) stalled."""


class IntegrandError(LegMomentsError, ValueError):
    """The integrand produced a non-finite value at an interior node."""


class UnknownIdentityError(LegMomentsError, KeyError):
    """No catalog entry under the given identifier."""
