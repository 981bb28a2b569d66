"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input is malformed or describes an unphysical
    state or measurement (non-Hermitian matrix, positivity violation,
    broken resolution of identity, singular weight matrix, ...)."""


class ApproximationError(ArithmeticError):
    """Raised when the weak-correlation expansion is undefined for the
    given state, e.g. a rank-deficient marginal combined with an
    entropic function whose derivatives diverge at zero."""
