"""
TeleBell - Bell teleportation inequality analysis

Decides, for a two-qubit teleportation channel, whether the correlations
used by the standard teleportation protocol violate a Bell teleportation
inequality, alongside the Bell-CHSH maximum and the teleportation fidelity:
- Dense qubit linear algebra and channel-state constructors
- Standard-protocol simulation and fidelity
- Bell-CHSH maximum by closed form and brute-force oracle
- Bell teleportation inequality search tau(D) and family conditions
- CLI for single analyses, region scans and verification suites

Version: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "TeleBell Team"

from .config.settings import Settings

__all__ = [
    "Settings",
    "__version__",
    "__author__",
]
