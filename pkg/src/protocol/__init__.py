"""
Teleportation protocol simulation for TeleBell.
"""

from .teleportation import (
    Strategy,
    MeasurementOutcome,
    RotationTriple,
    standard_strategy,
    bell_measure,
    fidelity_for_state,
    fidelity_average,
    fidelity_standard_closed,
    fidelity_from_rotations,
    standard_rotation_triple,
    classify_fidelity,
)

__all__ = [
    "Strategy",
    "MeasurementOutcome",
    "RotationTriple",
    "standard_strategy",
    "bell_measure",
    "fidelity_for_state",
    "fidelity_average",
    "fidelity_standard_closed",
    "fidelity_from_rotations",
    "standard_rotation_triple",
    "classify_fidelity",
]
