class ZeroPointError(Exception):
    """Base class for every error raised by the physics package."""


class DomainError(ZeroPointError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonConvergence(ZeroPointError, ArithmeticError):
    """A quadrature or series ran out of budget before meeting its tolerance."""


class ConsistencyError(NonConvergence):
    """Two independent evaluations of the same quantity disagree."""
