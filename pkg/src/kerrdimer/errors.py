"""Exception types shared across the package."""


class KerrDimerError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(KerrDimerError, ValueError):
    """An operator or Hilbert-space dimension is out of range or mismatched."""


class ContractViolationError(KerrDimerError, ValueError):
    """An input broke a documented precondition (e.g. non-Hermitian matrix)."""


class DegenerateSteadyStateError(KerrDimerError, RuntimeError):
    """The trace-constrained linear solve left a large residual, indicating a
    degenerate (non-unique) steady state at the given parameter point."""

    def __init__(self, message, residual=None, point=None):
        super().__init__(message)
        self.residual = residual
        self.point = point


class EvolutionConvergenceError(KerrDimerError, RuntimeError):
    """Long-time integration hit t_max without reaching a stationary state."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SweepConfigError(KerrDimerError, ValueError):
    """A sweep configuration value is missing, malformed, or inconsistent."""
