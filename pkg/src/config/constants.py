"""
Constants and enums for TeleBell.
"""

import math
from enum import Enum, IntEnum


class QuadratureMethod(Enum):
    """Bloch-sphere averaging method."""
    FIBONACCI = "fibonacci"
    MONTE_CARLO = "monte_carlo"


class FidelityClass(Enum):
    """Classification of a teleportation fidelity."""
    CLASSICAL = "classical"
    NONCLASSICAL = "nonclassical"
    ABOVE_THRESHOLD = "above_threshold"


class VerifySuite(Enum):
    """Verification suites exposed by the CLI."""
    PAPER_NUMBERS = "paper-numbers"
    BETA_GE_TAU = "beta-ge-tau"
    THRESHOLD = "threshold"
    CLASS_BOUNDS = "class-bounds"
    PROTOCOL = "protocol"


class ExitCode(IntEnum):
    """Process exit codes."""
    OK = 0
    CHECK_FAILED = 1
    PARSE_ERROR = 2
    INVALID_STATE = 3
    OUTPUT_ERROR = 4


# Numerical tolerances
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-9
UNIT_TOL = 1e-10
NORM_TOL = 1e-12
CONDITION_TOL = 1e-12
MAX_DIMENSION = 8
JACOBI_MAX_SWEEPS = 60

# Fidelity thresholds
CLASSICAL_FIDELITY = 2.0 / 3.0
TELE_THRESHOLD_FIDELITY = 2.0 / 3.0 + math.sqrt(2.0) / 6.0

# Bell-CHSH bounds
LHV_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

# Outcome index n -> Bell state label
OUTCOME_LABELS = {1: "Psi-", 2: "Phi-", 3: "Phi+", 4: "Psi+"}

# CSV header for scan output
SCAN_COLUMNS = [
    "lambda", "alpha", "beta", "tau_raw", "f_st",
    "bell_violating", "tele_violating", "nonclassical_fidelity", "in_paper_region",
]

THREADS_ENV_VAR = "TELEBELL_THREADS"
