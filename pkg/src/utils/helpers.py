"""
Helper functions and utilities for TeleBell.

This module contains grid parsing, float formatting and output path helpers
shared by the commands.
"""

import math
from pathlib import Path
from typing import List, Union

# Grid nodes are rounded to this many decimals to avoid 0.15000000000000002
GRID_DECIMALS = 12


def parse_grid(spec: str) -> List[float]:
    """
    Parse an inclusive ``start:stop:step`` grid.

    A single number is a one-point grid.
    """
    parts = [p.strip() for p in spec.split(":")]
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must look like start:stop:step, got {spec!r}")

    start, stop, step = (float(p) for p in parts)
    if step <= 0 or not math.isfinite(step):
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid stop {stop} is below start {start}")

    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [min(round(start + k * step, GRID_DECIMALS), stop) for k in range(count)]


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return f"{value:.17g}"




def ensure_parent_dir(path: Union[str, Path]) -> Path:
    """Create the parent directory of an output file if needed."""
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    return p
