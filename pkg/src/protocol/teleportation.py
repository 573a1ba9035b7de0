"""
Standard teleportation protocol simulation.

Alice holds the unknown qubit 1 and qubit 2 of the channel, Bob holds qubit 3.
Alice measures the Bell operator on qubits 1+2, announces the outcome n and Bob
applies U_n. Fidelities are computed per unknown state, as a Bloch-sphere
average and by the correlation-matrix closed form.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..config.constants import (
    CLASSICAL_FIDELITY,
    OUTCOME_LABELS,
    TELE_THRESHOLD_FIDELITY,
    UNIT_TOL,
    FidelityClass,
    QuadratureMethod,
)
from ..config.settings import QuadratureSettings
from ..core.qlinalg import kron, partial_trace
from ..core.states import (
    IDENTITY_2,
    PAULIS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BELL_BASIS,
    DensityOperator,
    PureQubitState,
    bell_density,
    correlation_matrix,
)
from ..utils.logger import get_logger

logger = get_logger("Teleportation")

# Below this an outcome is treated as impossible
ZERO_PROBABILITY = 1e-15


@dataclass(frozen=True)
class Strategy:
    """Bob's correction map n -> U_n."""
    unitaries: Dict[int, np.ndarray]
    name: str = "custom"

    def __post_init__(self):
        if sorted(self.unitaries) != [1, 2, 3, 4]:
            raise ValueError(f"strategy needs unitaries for outcomes 1..4, got {sorted(self.unitaries)}")
        for n, u in self.unitaries.items():
            u = np.asarray(u, dtype=complex)
            if u.shape != (2, 2):
                raise ValueError(f"U_{n} must be 2x2, got {u.shape}")
            dev = float(np.max(np.abs(u.conj().T @ u - IDENTITY_2)))
            if dev > UNIT_TOL:
                raise ValueError(f"U_{n} is not unitary (deviation {dev:.3e})")

    def __getitem__(self, n: int) -> np.ndarray:
        return np.asarray(self.unitaries[n], dtype=complex)


@dataclass
class MeasurementOutcome:
    """One Bell-measurement result with Bob's conditional (pre-correction) state."""
    n: int
    probability: float
    post_state: Optional[np.ndarray] = None

    @property
    def label(self) -> str:
        return OUTCOME_LABELS[self.n]

    @property
    def defined(self) -> bool:
        return self.post_state is not None


@dataclass(frozen=True)
class RotationTriple:
    """Bell-state correlation matrices T_n and Bob's rotations O_n."""
    t_matrices: Dict[int, np.ndarray] = field(default_factory=dict)
    o_matrices: Dict[int, np.ndarray] = field(default_factory=dict)


def standard_strategy() -> Strategy:
    """U_1 = I, U_2 = sigma_x, U_3 = sigma_y, U_4 = sigma_z."""
    return Strategy(
        unitaries={1: IDENTITY_2.copy(), 2: SIGMA_X.copy(), 3: SIGMA_Y.copy(), 4: SIGMA_Z.copy()},
        name="standard",
    )


def bell_measure(phi: PureQubitState, d: DensityOperator) -> List[MeasurementOutcome]:
    """Outcome probabilities and Bob's conditional states for unknown state phi."""
    rho = kron(phi.projector, d.matrix)
    outcomes = []
    for n in sorted(OUTCOME_LABELS):
        p_full = kron(BELL_BASIS.projector(n), IDENTITY_2)
        projected = p_full @ rho @ p_full
        probability = float(np.real(np.trace(projected)))
        if probability <= ZERO_PROBABILITY:
            logger.debug(f"Outcome {OUTCOME_LABELS[n]} has zero probability")
            outcomes.append(MeasurementOutcome(n=n, probability=max(probability, 0.0)))
            continue
        bob = partial_trace(projected, keep=3) / probability
        outcomes.append(MeasurementOutcome(n=n, probability=probability, post_state=bob))
    return outcomes


def fidelity_for_state(phi: PureQubitState, d: DensityOperator, s: Strategy) -> float:
    """Sum_n p_n <phi| U_n D_n U_n^dag |phi>."""
    total = 0.0
    for outcome in bell_measure(phi, d):
        if not outcome.defined:
            continue
        u = s[outcome.n]
        corrected = u @ outcome.post_state @ u.conj().T
        total += outcome.probability * float(np.real(phi.amplitudes.conj() @ corrected @ phi.amplitudes))
    return total


def bloch_to_states(directions: np.ndarray) -> np.ndarray:
    """Qubit amplitudes (K x 2) for unit Bloch vectors (K x 3)."""
    v = np.asarray(directions, dtype=float)
    polar = np.arccos(np.clip(v[:, 2], -1.0, 1.0))
    azimuth = np.arctan2(v[:, 1], v[:, 0])
    return np.stack([np.cos(polar / 2.0), np.exp(1j * azimuth) * np.sin(polar / 2.0)], axis=1)


def fibonacci_sphere(points: int) -> np.ndarray:
    """Deterministic near-uniform Bloch directions on the golden-angle spiral."""
    k = np.arange(points, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / points
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    angle = golden * k
    return np.stack([r * np.cos(angle), r * np.sin(angle), z], axis=1)


def quadrature_states(quad: QuadratureSettings) -> np.ndarray:
    if quad.method == QuadratureMethod.FIBONACCI:
        return bloch_to_states(fibonacci_sphere(quad.points))
    rng = np.random.default_rng(quad.seed)
    raw = rng.standard_normal((quad.samples, 2)) + 1j * rng.standard_normal((quad.samples, 2))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def fidelity_for_states(d: DensityOperator, s: Strategy, phis: np.ndarray) -> np.ndarray:
    """
    Vectorized fidelity for a batch of unknown states (K x 2 amplitudes).

    Bob's unnormalized conditional state for outcome n is
    Tr_12[(P_n x I)(|phi><phi| x D)]; its trace is p_n, so impossible
    outcomes contribute zero without special casing.
    """
    phis = np.asarray(phis, dtype=complex)
    d4 = d.matrix.reshape(2, 2, 2, 2)
    fidelities = np.zeros(phis.shape[0])
    for n in sorted(OUTCOME_LABELS):
        p4 = BELL_BASIS.projector(n).reshape(2, 2, 2, 2)
        bob = np.einsum("cdab,ka,kc,bedf->kef", p4, phis, phis.conj(), d4)
        u = s[n]
        corrected = np.einsum("ij,kjl,ml->kim", u, bob, u.conj())
        fidelities += np.real(np.einsum("ki,kij,kj->k", phis.conj(), corrected, phis))
    return fidelities


def fidelity_average(
    d: DensityOperator,
    s: Strategy,
    quad: Optional[QuadratureSettings] = None,
) -> float:
    """Bloch-sphere average of fidelity_for_state, deterministic for a given spec."""
    quad = quad or QuadratureSettings()
    values = fidelity_for_states(d, s, quadrature_states(quad))
    # fsum keeps the reduction order-independent
    return math.fsum(values.tolist()) / len(values)


def fidelity_standard_closed(d: DensityOperator) -> float:
    """F_st(D) = 1/2 - (T_xx + T_yy + T_zz)/6."""
    t = correlation_matrix(d).t
    return 0.5 - float(np.trace(t)) / 6.0


def _rotation_of(u: np.ndarray) -> np.ndarray:
    # O[m, k] = Tr[sigma_k U sigma_m U^dag] / 2
    conj = np.einsum("ij,mjk,lk->mil", u, PAULIS, u.conj())
    return np.real(np.einsum("kji,mij->mk", PAULIS, conj)) / 2.0


def standard_rotation_triple(s: Optional[Strategy] = None) -> RotationTriple:
    """T_n of each Bell outcome and O_n of the strategy's unitaries."""
    s = s or standard_strategy()
    t_matrices = {n: correlation_matrix(bell_density(OUTCOME_LABELS[n])).t for n in OUTCOME_LABELS}
    o_matrices = {n: _rotation_of(s[n]) for n in OUTCOME_LABELS}
    return RotationTriple(t_matrices=t_matrices, o_matrices=o_matrices)


def fidelity_from_rotations(d: DensityOperator, triple: Optional[RotationTriple] = None) -> float:
    """(1/8) Sum_n (1 + Tr[T_n^T T(D) O_n] / 3)."""
    triple = triple or standard_rotation_triple()
    t = correlation_matrix(d).t
    total = 0.0
    for n in sorted(OUTCOME_LABELS):
        total += 1.0 + float(np.trace(triple.t_matrices[n].T @ t @ triple.o_matrices[n])) / 3.0
    return total / 8.0


def classify_fidelity(f: float) -> FidelityClass:
    """Classical up to 2/3, above threshold past 2/3 + sqrt(2)/6; ties go down."""
    if f <= CLASSICAL_FIDELITY:
        return FidelityClass.CLASSICAL
    if f <= TELE_THRESHOLD_FIDELITY:
        return FidelityClass.NONCLASSICAL
    return FidelityClass.ABOVE_THRESHOLD
