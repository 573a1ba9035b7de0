"""
Command implementations behind the TeleBell CLI.
"""

from .analyze import build_report, cmd_analyze, write_report
from .scan import cmd_scan, compute_scan_point, run_scan, write_scan_csv
from .verify import CheckResult, VerificationRunner, VerifySummary, cmd_verify

__all__ = [
    "build_report",
    "cmd_analyze",
    "write_report",
    "cmd_scan",
    "compute_scan_point",
    "run_scan",
    "write_scan_csv",
    "CheckResult",
    "VerificationRunner",
    "VerifySummary",
    "cmd_verify",
]
