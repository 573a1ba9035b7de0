"""
Report models and state input parsing for TeleBell.
"""

from .models import AnalysisReport, ArgmaxSettings, FamilyConditions, ScanRecord
from .state_spec import ParsedState, parse_state_spec

__all__ = [
    "AnalysisReport",
    "ArgmaxSettings",
    "FamilyConditions",
    "ScanRecord",
    "ParsedState",
    "parse_state_spec",
]
