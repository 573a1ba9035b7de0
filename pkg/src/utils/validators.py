"""
Validation utilities for TeleBell.

This module contains checks for command-line inputs: family parameters,
grid specifications, output paths and suite names.
"""

import math
import os
from pathlib import Path
from typing import Union

from ..config.constants import VerifySuite
from .helpers import parse_grid


def validate_unit_interval(value: Union[float, str]) -> bool:
    """Validate a parameter that must lie in [0, 1]."""
    try:
        v = float(value)
    except (ValueError, TypeError):
        return False
    return math.isfinite(v) and 0.0 <= v <= 1.0


def validate_grid_spec(spec: str) -> bool:
    """Validate a start:stop:step grid lying inside [0, 1]."""
    try:
        values = parse_grid(spec)
    except (ValueError, TypeError):
        return False
    return bool(values) and all(validate_unit_interval(v) for v in values)


def validate_output_path(path: Union[str, Path]) -> bool:
    """Validate that a file can be created or overwritten at path."""
    p = Path(path)
    if p.exists():
        return p.is_file() and os.access(p, os.W_OK)
    parent = p.parent if str(p.parent) else Path(".")
    # Nearest existing ancestor must be a writable directory
    while not parent.exists():
        if parent.parent == parent:
            return False
        parent = parent.parent
    return parent.is_dir() and os.access(parent, os.W_OK)


def validate_suite_name(name: str) -> bool:
    return name in {s.value for s in VerifySuite}
