"""
Tests for the standard teleportation protocol and its fidelities.
"""

import math

import numpy as np
import pytest

from src.config.constants import FidelityClass, QuadratureMethod
from src.config.settings import QuadratureSettings
from src.core.states import (
    DOWN,
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    UP,
    PureQubitState,
    bell_density,
    correlation_matrix,
    d_lambda_alpha,
    maximally_mixed,
    product_state,
    random_density,
    random_pure_qubit,
    werner_state,
)
from src.protocol.teleportation import (
    Strategy,
    bell_measure,
    classify_fidelity,
    fidelity_average,
    fidelity_for_state,
    fidelity_for_states,
    fidelity_from_rotations,
    fidelity_standard_closed,
    standard_rotation_triple,
    standard_strategy,
)

WERNER_FIDELITY = 0.5 + 1.0 / (2.0 * math.sqrt(2.0))


def test_standard_strategy_unitaries():
    s = standard_strategy()
    np.testing.assert_allclose(s[1], IDENTITY_2)
    np.testing.assert_allclose(s[2], SIGMA_X)
    np.testing.assert_allclose(s[3], SIGMA_Y)
    np.testing.assert_allclose(s[4], SIGMA_Z)


def test_strategy_validation():
    with pytest.raises(ValueError):
        Strategy(unitaries={1: IDENTITY_2, 2: IDENTITY_2, 3: IDENTITY_2})
    with pytest.raises(ValueError):
        Strategy(unitaries={1: 2 * IDENTITY_2, 2: IDENTITY_2, 3: IDENTITY_2, 4: IDENTITY_2})


def test_singlet_outcomes_are_uniform():
    phi = PureQubitState(UP)
    outcomes = bell_measure(phi, bell_density("Psi-"))
    assert [o.n for o in outcomes] == [1, 2, 3, 4]
    for o in outcomes:
        assert o.probability == pytest.approx(0.25, abs=1e-14)


def test_maximally_mixed_channel_leaves_bob_mixed():
    for o in bell_measure(PureQubitState(UP), maximally_mixed()):
        assert o.probability == pytest.approx(0.25, abs=1e-14)
        np.testing.assert_allclose(o.post_state, IDENTITY_2 / 2, atol=1e-14)


def test_phi_plus_outcome_state():
    outcomes = bell_measure(PureQubitState(UP), bell_density("Phi+"))
    phi_plus = next(o for o in outcomes if o.label == "Phi+")
    assert phi_plus.probability == pytest.approx(0.25, abs=1e-14)
    np.testing.assert_allclose(phi_plus.post_state, np.outer(UP, UP), atol=1e-14)


def test_zero_probability_outcomes_are_undefined():
    d = product_state(UP, DOWN)
    outcomes = bell_measure(PureQubitState(UP), d)
    undefined = [o.label for o in outcomes if not o.defined]
    assert undefined == ["Psi-", "Psi+"]
    assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-14)
    assert 0.0 <= fidelity_for_state(PureQubitState(UP), d, standard_strategy()) <= 1.0


def test_probabilities_sum_to_one():
    rng = np.random.default_rng(1)
    for _ in range(25):
        outcomes = bell_measure(random_pure_qubit(rng), random_density(rng))
        assert sum(o.probability for o in outcomes) == pytest.approx(1.0, abs=1e-12)
        for o in outcomes:
            assert np.trace(o.post_state).real == pytest.approx(1.0, abs=1e-12)


def test_singlet_corrected_state_is_input():
    rng = np.random.default_rng(2)
    s = standard_strategy()
    for _ in range(10):
        phi = random_pure_qubit(rng)
        for o in bell_measure(phi, bell_density("Psi-")):
            u = s[o.n]
            np.testing.assert_allclose(u @ o.post_state @ u.conj().T, phi.projector, atol=1e-12)


def test_fidelity_for_state_examples():
    s = standard_strategy()
    rng = np.random.default_rng(4)
    for _ in range(10):
        phi = random_pure_qubit(rng)
        assert fidelity_for_state(phi, bell_density("Psi-"), s) == pytest.approx(1.0, abs=1e-12)
        assert fidelity_for_state(phi, maximally_mixed(), s) == pytest.approx(0.5, abs=1e-12)

    phi_plus = bell_density("Phi+")
    y_plus = PureQubitState(np.array([1, 1j]) / math.sqrt(2))
    assert fidelity_for_state(y_plus, phi_plus, s) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_for_state(PureQubitState(UP), phi_plus, s) == pytest.approx(0.0, abs=1e-12)


def test_batched_fidelity_matches_per_state():
    rng = np.random.default_rng(5)
    s = standard_strategy()
    d = random_density(rng)
    phis = [random_pure_qubit(rng) for _ in range(12)]
    batch = fidelity_for_states(d, s, np.stack([p.amplitudes for p in phis]))
    expected = [fidelity_for_state(p, d, s) for p in phis]
    np.testing.assert_allclose(batch, expected, atol=1e-12)


def test_closed_form_examples():
    assert fidelity_standard_closed(bell_density("Psi-")) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_standard_closed(maximally_mixed()) == pytest.approx(0.5, abs=1e-12)
    assert fidelity_standard_closed(bell_density("Phi+")) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert fidelity_standard_closed(werner_state()) == pytest.approx(WERNER_FIDELITY, abs=1e-12)
    assert WERNER_FIDELITY == pytest.approx(2.0 / 3.0 * (1 + (3 * math.sqrt(2) - 2) / 8), abs=1e-15)


@pytest.mark.parametrize("quad", [
    QuadratureSettings(),
    QuadratureSettings(method=QuadratureMethod.MONTE_CARLO, samples=20000, seed=3),
])
def test_quadrature_examples(quad):
    s = standard_strategy()
    assert fidelity_average(bell_density("Psi-"), s, quad) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_average(d_lambda_alpha(0.0, 0.3), s, quad) == pytest.approx(0.5, abs=1e-12)


def test_quadrature_matches_closed_form():
    s = standard_strategy()
    assert fidelity_average(werner_state(), s) == pytest.approx(WERNER_FIDELITY, abs=2e-3)
    rng = np.random.default_rng(6)
    for i in range(50):
        d = random_density(rng, rank=1 + i % 4)
        assert fidelity_average(d, s) == pytest.approx(fidelity_standard_closed(d), abs=2e-3)


def test_quadrature_is_deterministic():
    d = random_density(8)
    quad = QuadratureSettings(method=QuadratureMethod.MONTE_CARLO, samples=5000, seed=1)
    assert fidelity_average(d, standard_strategy(), quad) == fidelity_average(d, standard_strategy(), quad)


def test_rotation_triple():
    triple = standard_rotation_triple()
    np.testing.assert_allclose(triple.t_matrices[1], -np.eye(3), atol=1e-14)
    np.testing.assert_allclose(triple.t_matrices[2], np.diag([-1, 1, 1]), atol=1e-14)
    np.testing.assert_allclose(triple.t_matrices[3], np.diag([1, -1, 1]), atol=1e-14)
    np.testing.assert_allclose(triple.t_matrices[4], np.diag([1, 1, -1]), atol=1e-14)
    np.testing.assert_allclose(triple.o_matrices[1], np.eye(3), atol=1e-14)
    for n in (2, 3, 4):
        o = triple.o_matrices[n]
        np.testing.assert_allclose(o @ o.T, np.eye(3), atol=1e-14)
        assert np.linalg.det(o) == pytest.approx(1.0, abs=1e-12)


def test_rotation_pathway_matches_closed_form():
    rng = np.random.default_rng(10)
    triple = standard_rotation_triple()
    for i in range(50):
        d = random_density(rng, rank=1 + i % 4)
        assert fidelity_from_rotations(d, triple) == pytest.approx(fidelity_standard_closed(d), abs=1e-12)


def test_closed_form_uses_trace_of_t():
    d = random_density(12)
    assert fidelity_standard_closed(d) == pytest.approx(0.5 - np.trace(correlation_matrix(d).t) / 6, abs=1e-15)


@pytest.mark.parametrize("f, expected", [
    (0.5, FidelityClass.CLASSICAL),
    (2.0 / 3.0, FidelityClass.CLASSICAL),
    (0.85118, FidelityClass.NONCLASSICAL),
    (2.0 / 3.0 + math.sqrt(2.0) / 6.0, FidelityClass.NONCLASSICAL),
    (0.95, FidelityClass.ABOVE_THRESHOLD),
])
def test_classify_fidelity(f, expected):
    assert classify_fidelity(f) == expected
