"""
State input parsing.

A state is given either as a named family

    werner
    werner <p>
    d_lambda_alpha <lambda> <alpha>
    bell <Phi+|Phi-|Psi+|Psi->
    maximally_mixed

or as a path to a file holding one of those lines, or 16 lines of
``re im`` giving the 4x4 matrix row-major.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from ..core.exceptions import StateSpecError
from ..core.states import (
    DensityOperator,
    bell_density,
    d_lambda_alpha,
    maximally_mixed,
    werner_family,
    werner_state,
)
from ..utils.validators import validate_unit_interval

FAMILY_KEYWORDS = ("werner", "d_lambda_alpha", "bell", "maximally_mixed")


@dataclass(frozen=True)
class ParsedState:
    """Validated channel state together with its descriptor."""
    descriptor: str
    density: DensityOperator
    family: Optional[Tuple[float, float]] = None


def _parse_unit(token: str, name: str) -> float:
    if not validate_unit_interval(token):
        raise StateSpecError(f"{name} must be a number in [0, 1], got {token!r}")
    return float(token)


def parse_named(text: str) -> ParsedState:
    """Parse a named family line. Raises StateSpecError on malformed input."""
    tokens = text.split()
    if not tokens:
        raise StateSpecError("empty state specification")
    kind, args = tokens[0].lower(), tokens[1:]

    if kind == "werner":
        if not args:
            return ParsedState("werner", werner_state())
        if len(args) != 1:
            raise StateSpecError("usage: werner [p]")
        p = _parse_unit(args[0], "p")
        return ParsedState(f"werner {p!r}", werner_family(p))

    if kind == "d_lambda_alpha":
        if len(args) != 2:
            raise StateSpecError("usage: d_lambda_alpha <lambda> <alpha>")
        lam = _parse_unit(args[0], "lambda")
        alpha = _parse_unit(args[1], "alpha")
        return ParsedState(f"d_lambda_alpha {lam!r} {alpha!r}", d_lambda_alpha(lam, alpha), family=(lam, alpha))

    if kind == "bell":
        if len(args) != 1:
            raise StateSpecError("usage: bell <Phi+|Phi-|Psi+|Psi->")
        try:
            d = bell_density(args[0])
        except ValueError as e:
            raise StateSpecError(str(e)) from e
        return ParsedState(d.label, d)

    if kind == "maximally_mixed":
        if args:
            raise StateSpecError("maximally_mixed takes no arguments")
        return ParsedState("maximally_mixed", maximally_mixed())

    raise StateSpecError(f"unknown state family {tokens[0]!r}; expected one of {', '.join(FAMILY_KEYWORDS)}")


def parse_matrix_lines(lines: List[str]) -> np.ndarray:
    """16 lines of 're im' to a 4x4 complex matrix."""
    if len(lines) != 16:
        raise StateSpecError(f"matrix file needs 16 're im' lines, got {len(lines)}")
    entries = []
    for number, line in enumerate(lines, start=1):
        parts = line.split()
        if len(parts) != 2:
            raise StateSpecError(f"line {number}: expected 're im', got {line!r}")
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError as e:
            raise StateSpecError(f"line {number}: {e}") from e
        entries.append(complex(re, im))
    return np.array(entries, dtype=complex).reshape(4, 4)


def parse_state_file(path: Path) -> ParsedState:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StateSpecError(f"cannot read state file {path}: {e}") from e
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise StateSpecError(f"state file {path} is empty")
    if lines[0].split()[0].lower() in FAMILY_KEYWORDS:
        if len(lines) != 1:
            raise StateSpecError("a named state file holds a single line")
        return parse_named(lines[0])
    matrix = parse_matrix_lines(lines)
    return ParsedState(f"file {path.name}", DensityOperator(matrix, label=f"file {path.name}"))


def parse_state_spec(spec: str) -> ParsedState:
    """
    Resolve a CLI state argument.

    StateSpecError signals unparseable input; StateValidationError signals a
    parseable matrix that is not a density operator.
    """
    text = spec.strip()
    if not text:
        raise StateSpecError("empty state specification")
    if text.split()[0].lower() in FAMILY_KEYWORDS:
        return parse_named(text)
    path = Path(text)
    if path.is_file():
        return parse_state_file(path)
    raise StateSpecError(f"{spec!r} is neither a known state family nor a readable file")
