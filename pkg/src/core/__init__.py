"""
Core numerical kernel for TeleBell.

This package holds the small dense linear-algebra routines, the state and
operator constructors, and the exception hierarchy shared by every module.
"""

from .exceptions import (
    TeleBellError,
    LinalgError,
    ConvergenceError,
    StateValidationError,
    StateSpecError,
    ReportOutputError,
    GridSpecError,
)
from .qlinalg import HermitianEigenResult, kron, hermitian_eigen, partial_trace
from .states import (
    DensityOperator,
    PureQubitState,
    CorrelationMatrix,
    BellBasis,
    BELL_BASIS,
    pauli,
    spin_component,
    unknown_state,
    werner_state,
    werner_family,
    psi_alpha,
    d_lambda_alpha,
    correlation_matrix,
    random_density,
)

__all__ = [
    "TeleBellError",
    "LinalgError",
    "ConvergenceError",
    "StateValidationError",
    "StateSpecError",
    "ReportOutputError",
    "GridSpecError",
    "HermitianEigenResult",
    "kron",
    "hermitian_eigen",
    "partial_trace",
    "DensityOperator",
    "PureQubitState",
    "CorrelationMatrix",
    "BellBasis",
    "BELL_BASIS",
    "pauli",
    "spin_component",
    "unknown_state",
    "werner_state",
    "werner_family",
    "psi_alpha",
    "d_lambda_alpha",
    "correlation_matrix",
    "random_density",
]
