"""Exception types shared across the package."""


class FinpolylogError(Exception):
    """Base class for all package-specific errors."""


class ZeroInverse(FinpolylogError):
    """Multiplicative inverse of zero was requested."""


class NonIntegral(FinpolylogError):
    """A quantity that must be an integer turned out not to be."""


class StaudtClausenPole(FinpolylogError):
    """Bernoulli number has a pole modulo p (denominator divisible by p)."""


class SizeExceeded(FinpolylogError):
    """A configured size or budget bound was exceeded."""


class DomainMismatch(FinpolylogError):
    """Operands live over incompatible coefficient domains or variables."""


class ZeroDenominator(FinpolylogError):
    """Rational function constructed with an identically-zero denominator."""


class InadmissiblePoint(FinpolylogError):
    """Evaluation point makes some denominator vanish."""


class UnknownId(FinpolylogError):
    """Catalog or preset identifier is not registered."""


class BadParams(FinpolylogError):
    """Parameters are outside the documented range for an operation."""


class IndexOutOfRange(FinpolylogError):
    """An index parameter violates its documented bound."""


class DepthExceeded(FinpolylogError):
    """Recursion depth guard tripped."""


class DegenerateArgument(FinpolylogError):
    """An argument degenerates (for example a constant cross-ratio)."""


class SingularChoice(FinpolylogError):
    """Family construction parameters hit a singular configuration."""


class NoAdmissibleOrdering(FinpolylogError):
    """No ordering of distribution entries keeps every partial sum invertible."""


class BudgetExceeded(FinpolylogError):
    """An exhaustive check was requested beyond its configured budget."""
