"""
Dense complex linear algebra for one, two and three qubits.

Matrices are plain ``numpy`` complex arrays. Qubit indices 1, 2, 3 map to
tensor factors left to right and basis index 0 is spin up.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..config.constants import HERMITIAN_TOL, JACOBI_MAX_SWEEPS, MAX_DIMENSION, PSD_TOL
from .exceptions import ConvergenceError, LinalgError

ALLOWED_DIMENSIONS = frozenset(range(1, MAX_DIMENSION + 1))


@dataclass(frozen=True)
class HermitianEigenResult:
    """Eigenvalues sorted descending with matching orthonormal eigenvector columns."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex array within the supported dimensions."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise LinalgError(f"expected a matrix, got array of shape {m.shape}")
    rows, cols = m.shape
    if rows not in ALLOWED_DIMENSIONS or cols not in ALLOWED_DIMENSIONS:
        raise LinalgError(f"dimension {m.shape} outside 1..{MAX_DIMENSION}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("matrix has NaN or infinite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def kron(a, b) -> np.ndarray:
    """Kronecker product; each axis of the result is capped at 8."""
    ma = np.asarray(a, dtype=complex)
    mb = np.asarray(b, dtype=complex)
    if ma.ndim == 1:
        ma = ma.reshape(-1, 1)
    if mb.ndim == 1:
        mb = mb.reshape(-1, 1)
    rows = ma.shape[0] * mb.shape[0]
    cols = ma.shape[1] * mb.shape[1]
    if rows > MAX_DIMENSION or cols > MAX_DIMENSION:
        raise LinalgError(f"kron result {rows}x{cols} exceeds {MAX_DIMENSION}x{MAX_DIMENSION}")
    return np.kron(as_matrix(ma), as_matrix(mb))


def kron_all(*factors) -> np.ndarray:
    """Left-to-right Kronecker product of several factors."""
    if not factors:
        raise LinalgError("kron_all needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def hermitian_deviation(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(h, dtype=complex)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermitian_deviation(m) <= tol


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigen(
    h,
    tol: float = HERMITIAN_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> HermitianEigenResult:
    """
    Full spectrum of a small Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation zeroes one off-diagonal pair (p, q). The phase of a_pq is
    absorbed into the rotation so the 2x2 subproblem is real symmetric.
    """
    a = as_matrix(h).copy()
    n, m = a.shape
    if n != m:
        raise LinalgError(f"hermitian_eigen needs a square matrix, got {a.shape}")
    dev = hermitian_deviation(a)
    if dev > tol:
        raise LinalgError(f"matrix is not Hermitian (max deviation {dev:.3e})")

    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(float(np.max(np.abs(a))), 1.0)
    threshold = 1e-13 * scale

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps",
                sweeps=sweeps,
                off_norm=_off_norm(a),
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= threshold * 1e-3:
                    continue
                phase = apq / r
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if zeta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s * phase
                j[q, p] = -s * np.conj(phase)

                a = j.conj().T @ a @ j
                v = v @ j
        a = 0.5 * (a + a.conj().T)

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(-eigenvalues, kind="stable")
    return HermitianEigenResult(
        eigenvalues=eigenvalues[order],
        eigenvectors=v[:, order],
        sweeps=sweeps,
    )


def _qubit_count(dim: int) -> int:
    count = int(round(math.log2(dim))) if dim > 0 else -1
    if dim not in (2, 4, 8) or 2 ** count != dim:
        raise LinalgError(f"dimension {dim} is not 2, 4 or 8 qubits")
    return count


def partial_trace(rho, keep: Union[int, Sequence[int]]) -> np.ndarray:
    """
    Trace out every qubit not listed in ``keep``.

    ``keep`` holds 1-based qubit positions within ``rho`` (left to right).
    """
    m = as_matrix(rho)
    if m.shape[0] != m.shape[1]:
        raise LinalgError(f"partial_trace needs a square matrix, got {m.shape}")
    nq = _qubit_count(m.shape[0])
    if nq < 2:
        raise LinalgError("partial_trace needs at least two qubits")

    kept = [keep] if isinstance(keep, int) else list(keep)
    if not kept or len(set(kept)) != len(kept) or any(k < 1 or k > nq for k in kept):
        raise LinalgError(f"invalid subsystem selector {keep!r} for {nq} qubits")
    kept = sorted(kept)

    tensor = m.reshape([2] * (2 * nq))
    traced = [q for q in range(nq) if q + 1 not in kept]
    # Trace highest axes first so lower indices stay valid
    current = nq
    for q in sorted(traced, reverse=True):
        tensor = np.trace(tensor, axis1=q, axis2=q + current)
        current -= 1
    dim = 2 ** len(kept)
    return tensor.reshape(dim, dim)


def is_positive_semidefinite(h, tol: float = PSD_TOL) -> bool:
    return hermitian_eigen(h).min_eigenvalue >= tol


def operator_norm(h) -> float:
    """Spectral norm of a Hermitian matrix."""
    eig = hermitian_eigen(h).eigenvalues
    return float(max(abs(eig[0]), abs(eig[-1])))


def expectation(rho, op) -> float:
    """Real part of Tr[rho op]."""
    return float(np.real(np.trace(np.asarray(rho) @ np.asarray(op))))
