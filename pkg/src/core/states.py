"""
State and operator constructors for the teleportation channel.

Provides the Pauli algebra, the Bell basis in the outcome convention used by
the protocol, the channel families (Werner, D_{lambda,alpha}), seeded random
densities and the correlation data T(D) every analysis consumes.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Union

import numpy as np
from scipy.stats import unitary_group

from ..config.constants import (
    HERMITIAN_TOL,
    NORM_TOL,
    OUTCOME_LABELS,
    PSD_TOL,
    TRACE_TOL,
    UNIT_TOL,
)
from .exceptions import StateValidationError
from .qlinalg import as_matrix, hermitian_deviation, hermitian_eigen, kron

SQRT2 = math.sqrt(2.0)

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

_AXES = {"x": 0, "y": 1, "z": 2}

RandomSource = Union[int, np.random.Generator, None]


def _rng(seed: RandomSource) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureQubitState:
    """Normalized single-qubit state vector."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape != (2,):
            raise StateValidationError(f"qubit state needs 2 amplitudes, got {amp.shape}")
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > NORM_TOL:
            raise StateValidationError(f"qubit state is not normalized (norm {norm:.15f})")
        object.__setattr__(self, "amplitudes", _frozen(amp))

    @classmethod
    def from_vector(cls, vector: Sequence[complex]) -> "PureQubitState":
        """Normalize an arbitrary non-zero 2-vector."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise StateValidationError("cannot normalize the zero vector")
        return cls(v / norm)

    @property
    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    @property
    def bloch_vector(self) -> np.ndarray:
        rho = self.projector
        return np.real(np.einsum("ij,kji->k", rho, PAULIS))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Validated two-qubit channel state (qubits 2 and 3).

    Construction fails with StateValidationError unless the matrix is 4x4,
    Hermitian, unit trace and positive semidefinite within tolerance.
    """
    matrix: np.ndarray
    label: str = "custom"
    min_eigenvalue: float = field(default=0.0, compare=False)

    def __post_init__(self):
        try:
            m = as_matrix(self.matrix)
        except ValueError as e:
            raise StateValidationError(str(e)) from e
        if m.shape != (4, 4):
            raise StateValidationError(f"channel state must be 4x4, got {m.shape}")
        dev = hermitian_deviation(m)
        if dev > HERMITIAN_TOL:
            raise StateValidationError(f"channel state is not Hermitian (deviation {dev:.3e})")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_TOL:
            raise StateValidationError(f"channel state trace is {trace.real:.12g}, expected 1")
        min_eig = hermitian_eigen(m).min_eigenvalue
        if min_eig < PSD_TOL:
            raise StateValidationError(
                f"channel state is not positive semidefinite (min eigenvalue {min_eig:.6e})",
                min_eigenvalue=min_eig,
            )
        object.__setattr__(self, "matrix", _frozen(0.5 * (m + m.conj().T)))
        object.__setattr__(self, "min_eigenvalue", min_eig)

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigen(self.matrix).eigenvalues

    def relabel(self, label: str) -> "DensityOperator":
        return DensityOperator(self.matrix, label=label)


@dataclass(frozen=True)
class CorrelationMatrix:
    """T_mn = Tr[D(sigma_m x sigma_n)] plus both local Bloch vectors."""
    t: np.ndarray
    bloch_a: np.ndarray
    bloch_b: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.t)


@dataclass(frozen=True)
class BellBasis:
    """
    Bell states keyed by label and by outcome index.

    Outcome indices follow the standard-strategy pairing:
    n=1 Psi-, n=2 Phi-, n=3 Phi+, n=4 Psi+.
    """
    vectors: Dict[str, np.ndarray]

    def by_index(self, n: int) -> np.ndarray:
        if n not in OUTCOME_LABELS:
            raise ValueError(f"outcome index must be 1..4, got {n}")
        return self.vectors[OUTCOME_LABELS[n]]

    def projector(self, n: int) -> np.ndarray:
        v = self.by_index(n)
        return np.outer(v, v.conj())


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix for axis 'x', 'y' or 'z'."""
    key = axis.lower()
    if key not in _AXES:
        raise ValueError(f"unknown Pauli axis {axis!r}")
    return PAULIS[_AXES[key]].copy()


def spin_component(n: Sequence[float]) -> np.ndarray:
    """n . sigma for a unit direction n."""
    vec = np.asarray(n, dtype=float).reshape(-1)
    if vec.shape != (3,):
        raise ValueError(f"direction must be a 3-vector, got shape {vec.shape}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction is not a unit vector (norm {norm:.12g})")
    return np.einsum("k,kij->ij", vec, PAULIS)


def unknown_state(theta: float, vartheta: float) -> PureQubitState:
    """sin(theta)|up> + cos(theta) e^{i vartheta}|down>."""
    theta = math.fmod(theta, 2.0 * math.pi)
    vartheta = math.fmod(vartheta, 2.0 * math.pi)
    return PureQubitState(np.array([math.sin(theta), math.cos(theta) * np.exp(1j * vartheta)]))


def _bell_vectors() -> Dict[str, np.ndarray]:
    r = 1.0 / SQRT2
    return {
        "Phi+": np.array([r, 0, 0, r], dtype=complex),
        "Phi-": np.array([r, 0, 0, -r], dtype=complex),
        "Psi+": np.array([0, r, r, 0], dtype=complex),
        "Psi-": np.array([0, r, -r, 0], dtype=complex),
    }


BELL_BASIS = BellBasis(vectors=_bell_vectors())

_BELL_ALIASES = {
    "phi+": "Phi+", "phi-": "Phi-", "psi+": "Psi+", "psi-": "Psi-",
    "φ+": "Phi+", "φ-": "Phi-", "ψ+": "Psi+", "ψ-": "Psi-",
    "φ₊": "Phi+", "φ₋": "Phi-", "ψ₊": "Psi+", "ψ₋": "Psi-",
}


def canonical_bell_label(name: str) -> str:
    key = name.strip().lower().replace("−", "-")
    if key not in _BELL_ALIASES:
        raise ValueError(f"unknown Bell state {name!r}")
    return _BELL_ALIASES[key]


def bell_state(name: str) -> np.ndarray:
    """Bell vector by label (Phi+, Phi-, Psi+, Psi-; Greek letters accepted)."""
    return BELL_BASIS.vectors[canonical_bell_label(name)].copy()


def bell_projector(n: int) -> np.ndarray:
    """Projector on the Bell state of outcome index n."""
    return BELL_BASIS.projector(n)


def pure_density(vector: Sequence[complex], label: str = "pure") -> DensityOperator:
    v = np.asarray(vector, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return DensityOperator(np.outer(v, v.conj()), label=label)


def bell_density(name: str) -> DensityOperator:
    label = canonical_bell_label(name)
    return pure_density(BELL_BASIS.vectors[label], label=f"bell {label}")


def maximally_mixed() -> DensityOperator:
    return DensityOperator(np.eye(4, dtype=complex) / 4.0, label="maximally_mixed")


def werner_family(p: float) -> DensityOperator:
    """(1-p) I/4 + p |Psi-><Psi-|."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight must lie in [0, 1], got {p}")
    singlet = bell_projector(1)
    m = (1.0 - p) * np.eye(4, dtype=complex) / 4.0 + p * singlet
    return DensityOperator(m, label=f"werner {p!r}")


def werner_state() -> DensityOperator:
    """Werner state with singlet weight 1/sqrt(2), the point where beta = 2."""
    return werner_family(1.0 / SQRT2).relabel("werner")


def plus_minus_states() -> Dict[str, np.ndarray]:
    """The |+> and |-> qubit states used by the D_{lambda,alpha} family."""
    s3 = math.sqrt(3.0)
    out = {}
    for sign, key in ((1.0, "+"), (-1.0, "-")):
        norm = math.sqrt(2.0 * (3.0 + sign * s3))
        out[key] = np.array([(1.0 + sign * s3) / norm, (1.0 + 1.0j) / norm], dtype=complex)
    return out


def psi_alpha(alpha: float) -> np.ndarray:
    """alpha|+>|+> + sqrt(1 - alpha^2)|->|->."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    pm = plus_minus_states()
    beta = math.sqrt(max(0.0, 1.0 - alpha * alpha))
    return alpha * np.kron(pm["+"], pm["+"]) + beta * np.kron(pm["-"], pm["-"])


def d_lambda_alpha(lam: float, alpha: float) -> DensityOperator:
    """(1 - lambda) I/4 + lambda |psi_alpha><psi_alpha|."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    psi = psi_alpha(alpha)
    m = (1.0 - lam) * np.eye(4, dtype=complex) / 4.0 + lam * np.outer(psi, psi.conj())
    return DensityOperator(m, label=f"d_lambda_alpha {lam!r} {alpha!r}")


def product_state(a: Sequence[complex], b: Sequence[complex]) -> DensityOperator:
    """|a><a| x |b><b| for single-qubit vectors a, b."""
    pa = PureQubitState.from_vector(a).projector
    pb = PureQubitState.from_vector(b).projector
    return DensityOperator(kron(pa, pb), label="product")


def correlation_matrix(d: DensityOperator) -> CorrelationMatrix:
    """Correlation matrix T(D) and local Bloch vectors of a channel state."""
    m = d.matrix.reshape(2, 2, 2, 2)
    # rho[i a, j b] sigma_m[j i] sigma_n[b a]
    t = np.real(np.einsum("iajb,mji,nba->mn", m, PAULIS, PAULIS))
    reduced_a = np.einsum("iaja->ij", m)
    reduced_b = np.einsum("iaib->ab", m)
    bloch_a = np.real(np.einsum("ij,kji->k", reduced_a, PAULIS))
    bloch_b = np.real(np.einsum("ab,kba->k", reduced_b, PAULIS))
    return CorrelationMatrix(t=t, bloch_a=bloch_a, bloch_b=bloch_b)


def random_unitary(seed: RandomSource = None) -> np.ndarray:
    """Haar-random 2x2 unitary."""
    return np.asarray(unitary_group.rvs(2, random_state=_rng(seed)), dtype=complex)


def random_density(seed: RandomSource, rank: int = 4) -> DensityOperator:
    """
    Induced-measure random channel state of the given rank.

    Draws a complex Gaussian 4 x rank matrix G and returns G G^dag / Tr(G G^dag).
    An integer seed gives bit-identical output across runs.
    """
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityOperator(rho, label=f"random rank={rank}")


def random_pure_qubit(seed: RandomSource = None) -> PureQubitState:
    rng = _rng(seed)
    return PureQubitState.from_vector(rng.standard_normal(2) + 1j * rng.standard_normal(2))


def random_unit_vector(seed: RandomSource = None) -> np.ndarray:
    rng = _rng(seed)
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def local_unitary(
    d: DensityOperator,
    u: np.ndarray,
    v: np.ndarray,
    label: Optional[str] = None,
) -> DensityOperator:
    """(u x v) D (u x v)^dag."""
    w = kron(u, v)
    return DensityOperator(w @ d.matrix @ w.conj().T, label=label or f"{d.label} (local unitary)")


def mix(d1: DensityOperator, d2: DensityOperator, p: float) -> DensityOperator:
    """p D1 + (1 - p) D2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    return DensityOperator(p * d1.matrix + (1.0 - p) * d2.matrix, label="mixture")
