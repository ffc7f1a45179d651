"""Exception types shared by the numerical modules."""


class DomainError(ValueError):
    """Argument outside the region where a formula is defined."""


class EvaluationError(ArithmeticError):
    """An integrand or kernel produced a non-finite value."""


class ConvergenceError(RuntimeError):
    """Iteration or adaptive refinement stopped before reaching tolerance.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to use them anyway.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConsistencyError(ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""
