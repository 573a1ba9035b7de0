"""
Exception hierarchy for TeleBell.
"""

from typing import Optional


class TeleBellError(Exception):
    """Base class for all TeleBell errors."""


class LinalgError(TeleBellError, ValueError):
    """Invalid operand for a linear-algebra kernel (shape, dimension, Hermiticity)."""


class ConvergenceError(TeleBellError, RuntimeError):
    """Iterative solver exhausted its sweep budget."""

    def __init__(self, message: str, sweeps: int, off_norm: float):
        super().__init__(message)
        self.sweeps = sweeps
        self.off_norm = off_norm


class StateValidationError(TeleBellError, ValueError):
    """A matrix failed the density-operator invariants."""

    def __init__(self, message: str, min_eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class StateSpecError(TeleBellError, ValueError):
    """A state description could not be parsed."""


class ReportOutputError(TeleBellError, OSError):
    """A report or scan file could not be written."""


class GridSpecError(TeleBellError, ValueError):
    """A scan grid specification could not be parsed."""
