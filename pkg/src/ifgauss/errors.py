"""Exception types shared across the package."""


class IfgaussError(Exception):
    """Base class for all package-specific errors."""


class ParameterDomainError(IfgaussError, ValueError):
    """Model or operation parameters outside their valid domain."""


class NumericEvaluationError(IfgaussError, ArithmeticError):
    """A numeric evaluation produced non-finite or inconsistent values."""


class RegimeError(IfgaussError):
    """An operation was called for a distribution regime it does not cover."""


class SignalZeroError(IfgaussError):
    """The signal (or process power) vanishes where the operation needs it nonzero."""


class ModelDescriptionError(IfgaussError, ValueError):
    """A model description file or mapping could not be interpreted."""
