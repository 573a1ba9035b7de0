"""
Configuration management module for TeleBell.

This module handles configuration loading, validation, and management
including YAML config files, environment variables, and runtime settings.
"""

from .settings import (
    Settings,
    OptimizerSettings,
    QuadratureSettings,
    OracleSettings,
    ScanSettings,
    LoggingSettings,
)
from .constants import *

__all__ = [
    "Settings",
    "OptimizerSettings",
    "QuadratureSettings",
    "OracleSettings",
    "ScanSettings",
    "LoggingSettings",
]
