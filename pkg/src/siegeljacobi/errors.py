"""Exception types shared across the library."""


class DimensionError(ValueError):
    """Matrix or degree shapes are inconsistent."""


class DomainError(ValueError):
    """Input sits outside the mathematical domain of the operation."""


class NumericError(ArithmeticError):
    """Computation cannot be trusted (ill-conditioning, spectrum out of range)."""


class AccuracyError(RuntimeError):
    """A quadrature or truncation cannot reach the requested accuracy."""


class ConvergenceError(RuntimeError):
    """An iteration hit its cap before reaching a fixed point."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParameterError(ValueError):
    """A numeric parameter violates its contract (step size, normalization)."""
