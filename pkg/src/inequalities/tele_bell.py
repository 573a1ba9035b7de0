"""
Bell teleportation inequality machinery.

Alice's observables A_j are +-1 valued functions of the Bell operator on
qubits 1+2. Contracting A_j against the unknown state |phi_j> gives a
self-adjoint contraction X_j on qubit 2, which reduces the teleportation
expression to a CHSH-like form on the channel state alone.
"""

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import CONDITION_TOL, TELE_THRESHOLD_FIDELITY, UNIT_TOL
from ..core.qlinalg import kron
from ..core.states import (
    IDENTITY_2,
    PAULIS,
    BELL_BASIS,
    DensityOperator,
    PureQubitState,
    correlation_matrix,
    spin_component,
    unknown_state,
)
from ..protocol.teleportation import fidelity_standard_closed

TWO_PI = 2.0 * math.pi
SQRT2 = math.sqrt(2.0)


class AssignmentClass(Enum):
    """Sign-split class of an assignment pair."""
    I = "I"
    II = "II"
    III = "III"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, order=True)
class BivalentAssignment:
    """
    Signs of A = a|Psi+><Psi+| + b|Psi-><Psi-| + c|Phi+><Phi+| + d|Phi-><Phi-|.
    """
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"assignment sign {name} must be +1 or -1, got {getattr(self, name)}")

    @property
    def signs(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def positives(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def degenerate(self) -> bool:
        return self.positives in (0, 4)

    @property
    def balanced(self) -> bool:
        """Two signs of each kind."""
        return self.positives == 2

    def negated(self) -> "BivalentAssignment":
        return BivalentAssignment(-self.a, -self.b, -self.c, -self.d)

    def pauli_coefficients(self) -> Tuple[float, float, float, float]:
        """(x0, kx, ky, kz) with X = x0 I + (kx sin2t cos v, ky sin2t sin v, kz cos2t) . sigma."""
        a, b, c, d = self.signs
        return (
            (a + b + c + d) / 4.0,
            (a - b + c - d) / 4.0,
            (a - b - c + d) / 4.0,
            (a + b - c - d) / 4.0,
        )

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


ALL_ASSIGNMENTS: List[BivalentAssignment] = [
    BivalentAssignment(*signs) for signs in itertools.product((1, -1), repeat=4)
]


@dataclass(frozen=True)
class TeleSettings:
    """Assignments, unknown-state angles and Bob's directions for one evaluation."""
    assignment_1: BivalentAssignment
    assignment_2: BivalentAssignment
    theta_1: float
    vartheta_1: float
    theta_2: float
    vartheta_2: float
    bob_1: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    bob_2: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        for name in ("theta_1", "vartheta_1", "theta_2", "vartheta_2"):
            object.__setattr__(self, name, float(getattr(self, name)) % TWO_PI)
        for name in ("bob_1", "bob_2"):
            vec = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            norm = float(np.linalg.norm(vec))
            if vec.shape != (3,) or abs(norm - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} must be a unit 3-vector (norm {norm:.12g})")
            object.__setattr__(self, name, vec)

    @property
    def phi_1(self) -> PureQubitState:
        return unknown_state(self.theta_1, self.vartheta_1)

    @property
    def phi_2(self) -> PureQubitState:
        return unknown_state(self.theta_2, self.vartheta_2)

    def with_bob(self, bob_1: np.ndarray, bob_2: np.ndarray) -> "TeleSettings":
        return TeleSettings(
            self.assignment_1, self.assignment_2,
            self.theta_1, self.vartheta_1, self.theta_2, self.vartheta_2,
            bob_1=bob_1, bob_2=bob_2,
        )


@dataclass(frozen=True)
class InnerMaximum:
    """Closed-form maximum over Bob's two directions."""
    value: float
    bob_1: np.ndarray
    bob_2: np.ndarray


@dataclass(frozen=True)
class ClassBoundValues:
    """Left-hand sides of the family conditions at (lambda, alpha)."""
    bell: float
    class1: float
    class23: float


@dataclass(frozen=True)
class ThresholdCheck:
    f_st: float
    bound_value: float
    implies_violation: bool


def bivalent_observable(s: BivalentAssignment) -> np.ndarray:
    """4x4 observable with eigenvalue s on each Bell state."""
    vectors = BELL_BASIS.vectors
    out = np.zeros((4, 4), dtype=complex)
    for sign, label in zip(s.signs, ("Psi+", "Psi-", "Phi+", "Phi-")):
        out += sign * np.outer(vectors[label], vectors[label].conj())
    return out


def classify(pair: Tuple[BivalentAssignment, BivalentAssignment]) -> AssignmentClass:
    """I: both 2-2 splits; II: one 2-2 and one 3-1; III: both 3-1."""
    first, second = pair
    if first.degenerate or second.degenerate:
        return AssignmentClass.DEGENERATE
    balanced = int(first.balanced) + int(second.balanced)
    return {2: AssignmentClass.I, 1: AssignmentClass.II, 0: AssignmentClass.III}[balanced]


def contraction_vector(s: BivalentAssignment, theta: float, vartheta: float) -> Tuple[float, np.ndarray]:
    """(x0, x) with X = x0 I + x . sigma, from the trigonometric expansion."""
    x0, kx, ky, kz = s.pauli_coefficients()
    s2 = math.sin(2.0 * theta)
    x = np.array([
        kx * s2 * math.cos(vartheta),
        ky * s2 * math.sin(vartheta),
        kz * math.cos(2.0 * theta),
    ])
    return x0, x


def contraction_X(s: BivalentAssignment, theta: float, vartheta: float) -> np.ndarray:
    """X_j for assignment s and unknown state (theta, vartheta)."""
    x0, x = contraction_vector(s, theta, vartheta)
    return x0 * IDENTITY_2 + np.einsum("k,kij->ij", x, PAULIS)


def contraction_X_oracle(s: BivalentAssignment, phi: PureQubitState) -> np.ndarray:
    """<v|X|w> = <phi|<v| A |phi>|w>, independent of the trigonometric form."""
    a4 = bivalent_observable(s).reshape(2, 2, 2, 2)
    amp = phi.amplitudes
    return np.einsum("i,ivjw,j->vw", amp.conj(), a4, amp)


def decompose_qubit_operator(x: np.ndarray) -> Tuple[float, np.ndarray]:
    """(x0, x) of a 2x2 self-adjoint operator in the Pauli basis."""
    x = np.asarray(x, dtype=complex)
    x0 = float(np.real(np.trace(x))) / 2.0
    vec = np.real(np.einsum("ij,kji->k", x, PAULIS)) / 2.0
    return x0, vec


def correlator_row(d: DensityOperator, x: np.ndarray) -> np.ndarray:
    """r_n = <X x sigma_n>_D = x0 s_n + (x^T T)_n."""
    corr = correlation_matrix(d)
    x0, vec = decompose_qubit_operator(x)
    return x0 * corr.bloch_b + vec @ corr.t


def _tele_combination(e11: float, e12: float, e21: float, e22: float) -> float:
    return abs(e11 + e12 + e21 - e22)


def tele_value(d: DensityOperator, ts: TeleSettings) -> float:
    """|<A1 s1> + <A1 s2> + <A2 s1> - <A2 s2>| from three-qubit expectations."""
    sigma_1 = spin_component(ts.bob_1)
    sigma_2 = spin_component(ts.bob_2)

    def corr(assignment: BivalentAssignment, phi: PureQubitState, sigma: np.ndarray) -> float:
        rho = kron(phi.projector, d.matrix)
        op = kron(bivalent_observable(assignment), sigma)
        return float(np.real(np.trace(rho @ op)))

    phi_1, phi_2 = ts.phi_1, ts.phi_2
    return _tele_combination(
        corr(ts.assignment_1, phi_1, sigma_1),
        corr(ts.assignment_1, phi_1, sigma_2),
        corr(ts.assignment_2, phi_2, sigma_1),
        corr(ts.assignment_2, phi_2, sigma_2),
    )


def tele_value_contracted(d: DensityOperator, ts: TeleSettings) -> float:
    """|<X1 x (s1 + s2) + X2 x (s1 - s2)>_D| via the contractions."""
    r1 = correlator_row(d, contraction_X(ts.assignment_1, ts.theta_1, ts.vartheta_1))
    r2 = correlator_row(d, contraction_X(ts.assignment_2, ts.theta_2, ts.vartheta_2))
    return abs(float(r1 @ (ts.bob_1 + ts.bob_2) + r2 @ (ts.bob_1 - ts.bob_2)))


def _unit_or_z(v: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    return v / norm if norm > 0.0 else np.array([0.0, 0.0, 1.0])


def inner_max_over_bob(d: DensityOperator, x1: np.ndarray, x2: np.ndarray) -> InnerMaximum:
    """
    Maximum over Bob's unit directions b, b' of |r1.(b + b') + r2.(b - b')|.

    Regrouping as (r1 + r2).b + (r1 - r2).b' gives |r1 + r2| + |r1 - r2|.
    """
    r1 = correlator_row(d, x1)
    r2 = correlator_row(d, x2)
    plus, minus = r1 + r2, r1 - r2
    return InnerMaximum(
        value=float(np.linalg.norm(plus) + np.linalg.norm(minus)),
        bob_1=_unit_or_z(plus),
        bob_2=_unit_or_z(minus),
    )


def tau_lower_bound(d: DensityOperator) -> float:
    """sqrt(2) |T_xx + T_yy|, attained by the X1 = sigma_x, X2 = sigma_y construction."""
    t = correlation_matrix(d).t
    return SQRT2 * abs(float(t[0, 0] + t[1, 1]))


def zukowski_settings() -> TeleSettings:
    """Original two-observable settings that reach 2 sqrt(2) on Phi+."""
    return TeleSettings(
        assignment_1=BivalentAssignment(a=-1, b=1, c=-1, d=1),
        assignment_2=BivalentAssignment(a=1, b=-1, c=-1, d=1),
        theta_1=math.pi / 4, vartheta_1=0.0,
        theta_2=math.pi / 4, vartheta_2=math.pi / 2,
        bob_1=np.array([1.0, 1.0, 0.0]) / SQRT2,
        bob_2=np.array([1.0, -1.0, 0.0]) / SQRT2,
    )


def fidelity_bound_settings() -> TeleSettings:
    """X1 = sigma_x, X2 = sigma_y with b, b' = (x +- y)/sqrt(2)."""
    return TeleSettings(
        assignment_1=BivalentAssignment(a=1, b=-1, c=1, d=-1),
        assignment_2=BivalentAssignment(a=1, b=-1, c=-1, d=1),
        theta_1=math.pi / 4, vartheta_1=0.0,
        theta_2=math.pi / 4, vartheta_2=math.pi / 2,
        bob_1=np.array([1.0, 1.0, 0.0]) / SQRT2,
        bob_2=np.array([1.0, -1.0, 0.0]) / SQRT2,
    )


def _check_family_parameters(lam: float, alpha: float) -> None:
    if not (0.0 <= lam <= 1.0 and 0.0 <= alpha <= 1.0):
        raise ValueError(f"(lambda, alpha) must lie in [0, 1]^2, got ({lam}, {alpha})")


def class_bound_values(lam: float, alpha: float) -> ClassBoundValues:
    _check_family_parameters(lam, alpha)
    q = alpha * alpha * (1.0 - alpha * alpha)
    pure_beta_half = math.sqrt(1.0 + 4.0 * q)
    return ClassBoundValues(
        bell=lam * pure_beta_half,
        class1=lam * math.sqrt(2.0 / 3.0 * (1.0 + 8.0 * q)),
        class23=lam * (math.sqrt(2.0 * (1.0 - 2.0 * q)) + pure_beta_half),
    )


def condition_bell(lam: float, alpha: float) -> bool:
    """beta(D_{lambda,alpha}) > 2."""
    return class_bound_values(lam, alpha).bell > 1.0


def condition_class1(lam: float, alpha: float) -> bool:
    """No Class I violation possible."""
    return class_bound_values(lam, alpha).class1 <= 1.0 + CONDITION_TOL


def condition_class23(lam: float, alpha: float) -> bool:
    """No Class II or III violation possible."""
    return class_bound_values(lam, alpha).class23 <= 2.0 + CONDITION_TOL


def in_paper_region(lam: float, alpha: float) -> bool:
    return condition_bell(lam, alpha) and condition_class1(lam, alpha) and condition_class23(lam, alpha)


def threshold_check(d: DensityOperator) -> ThresholdCheck:
    """Fidelity threshold past which tau(D) > 2 is forced."""
    f_st = fidelity_standard_closed(d)
    t = correlation_matrix(d).t
    bound_value = SQRT2 * abs(float(t[2, 2]) + 6.0 * f_st - 3.0)
    return ThresholdCheck(
        f_st=f_st,
        bound_value=bound_value,
        implies_violation=f_st > TELE_THRESHOLD_FIDELITY,
    )


def assignment_pairs(
    symmetry_reduced: bool = True,
    classes: Optional[Iterable[AssignmentClass]] = None,
) -> List[Tuple[BivalentAssignment, BivalentAssignment]]:
    """
    Non-degenerate assignment pairs in lexicographic order.

    The reduced set fixes a = +1 on both members (the maximum is blind to
    negating either one) and keeps unordered pairs (blind to swapping).
    """
    wanted = set(classes) if classes is not None else None
    members: Sequence[BivalentAssignment] = [
        s for s in ALL_ASSIGNMENTS
        if not s.degenerate and (not symmetry_reduced or s.a == 1)
    ]
    members = sorted(members, reverse=True)
    pairs = []
    for i, first in enumerate(members):
        for j, second in enumerate(members):
            if symmetry_reduced and j < i:
                continue
            if wanted is not None and classify((first, second)) not in wanted:
                continue
            pairs.append((first, second))
    return pairs
