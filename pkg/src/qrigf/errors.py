"""Exception hierarchy shared by the whole package."""


class QrigfError(Exception):
    """Base class for all library errors."""


class ParamError(QrigfError, ValueError):
    """A model or distortion parameter violates its constraint."""


class DomainError(QrigfError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class SupportMismatch(QrigfError, ValueError):
    """The supports of the two distributions are incompatible."""


class NoConvergence(QrigfError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class DivergentIntegral(QrigfError, ArithmeticError):
    """An integral does not converge, or a closed form is outside its
    validity window."""


class DegenerateDensity(QrigfError, ArithmeticError):
    """A quantile density is zero where a positive value is required."""


class ZeroSpacing(QrigfError, ArithmeticError):
    """A zero spacing between order statistics makes the requested power
    diverge; see the tie policy in ``order_sample``."""


class TooSmall(QrigfError, ValueError):
    """A sample is too small for the requested operation."""
