"""Tests for the qubit gates and the three-gate purification circuit."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purifykit import numerics
from purifykit.ensembles import Ensemble
from purifykit.errors import ArityMismatch, NotUnitary
from purifykit.qubit_gates import (
    Gate,
    cnot,
    purification_circuit,
    qubit_demo,
    rotation,
)

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2)

angles = st.floats(-np.pi, np.pi, allow_nan=False)


def apply(gate, state):
    return gate.matrix @ state


# ---------------------------------------------------------------------------
# gates


def test_gate_must_be_unitary():
    with pytest.raises(NotUnitary):
        Gate(1, np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_cnot_keeps_control_zero():
    np.testing.assert_allclose(
        apply(cnot(), np.kron(KET0, KET0)), np.kron(KET0, KET0), atol=1e-15
    )


def test_cnot_flips_target_for_control_one():
    np.testing.assert_allclose(
        apply(cnot(), np.kron(KET1, KET0)), np.kron(KET1, KET1), atol=1e-15
    )


def test_cnot_is_an_involution():
    np.testing.assert_allclose(cnot().matrix @ cnot().matrix, np.eye(4), atol=1e-15)


def test_rotation_at_zero_is_identity():
    np.testing.assert_allclose(rotation(0.0).matrix, np.eye(2), atol=1e-15)


def test_rotation_quarter_angle_builds_plus_state():
    np.testing.assert_allclose(apply(rotation(np.pi / 4), KET0), PLUS, atol=1e-12)
    # the partner column is the minus state up to a global phase
    assert numerics.state_fidelity(apply(rotation(np.pi / 4), KET1), MINUS) > 1 - 1e-12


@given(theta=angles, phase=angles)
@settings(max_examples=80, deadline=None)
def test_rotation_is_unitary(theta, phase):
    gate = rotation(theta, phase)
    residual = numerics.max_abs(gate.matrix @ numerics.dag(gate.matrix) - np.eye(2))
    assert residual <= 1e-12


# ---------------------------------------------------------------------------
# purification circuit


def test_circuit_with_identity_rotation_is_cnot():
    circuit = purification_circuit(rotation(0.0))
    np.testing.assert_allclose(circuit.matrix, cnot().matrix, atol=1e-15)


def test_circuit_rejects_two_qubit_rotation():
    with pytest.raises(ArityMismatch):
        purification_circuit(cnot())


def test_circuit_on_the_plus_minus_basis():
    circuit = purification_circuit(rotation(np.pi / 4))
    kept = apply(circuit, np.kron(PLUS, KET0))
    moved = apply(circuit, np.kron(MINUS, KET0))
    # oracle: explicit 4x4 product of the three gate matrices
    r = rotation(np.pi / 4).matrix
    oracle = np.kron(r, np.eye(2)) @ cnot().matrix @ np.kron(r.conj().T, np.eye(2))
    np.testing.assert_allclose(circuit.matrix, oracle, atol=1e-14)
    np.testing.assert_allclose(kept, np.kron(PLUS, KET0), atol=1e-12)
    np.testing.assert_allclose(moved, np.kron(MINUS, KET1), atol=1e-12)


@given(theta=angles, phase=angles)
@settings(max_examples=80, deadline=None)
def test_circuit_correlates_its_own_rotation_basis(theta, phase):
    gate = rotation(theta, phase)
    x_plus = gate.matrix[:, 0]
    x_minus = gate.matrix[:, 1]
    circuit = purification_circuit(gate)
    residual = numerics.max_abs(
        circuit.matrix @ numerics.dag(circuit.matrix) - np.eye(4)
    )
    assert residual <= 1e-10
    kept = apply(circuit, np.kron(x_plus, KET0))
    moved = apply(circuit, np.kron(x_minus, KET0))
    assert numerics.max_abs(kept - np.kron(x_plus, KET0)) <= 1e-12
    assert numerics.max_abs(moved - np.kron(x_minus, KET1)) <= 1e-12


# ---------------------------------------------------------------------------
# demo


def test_demo_balanced_plus_minus_mixture():
    report = qubit_demo(0.5, np.pi / 4)
    np.testing.assert_allclose(report.recovered.weights, [0.5, 0.5], atol=1e-12)
    assert numerics.state_fidelity(report.recovered.states[0], PLUS) > 1 - 1e-12
    assert numerics.state_fidelity(report.recovered.states[1], MINUS) > 1 - 1e-12
    assert report.passed()


def test_demo_biased_computational_mixture():
    report = qubit_demo(0.3, 0.0)
    np.testing.assert_allclose(report.recovered.weights, [0.3, 0.7], atol=1e-12)
    assert numerics.state_fidelity(report.recovered.states[0], KET0) > 1 - 1e-12
    assert numerics.state_fidelity(report.recovered.states[1], KET1) > 1 - 1e-12


def test_demo_steers_to_a_requested_equivalent_target():
    target = Ensemble(2, [0.5, 0.5], [KET0, KET1])
    report = qubit_demo(0.5, np.pi / 4, target=target)
    assert report.steering_report.weight_deviation <= 1e-9
    assert report.steering_report.state_infidelity <= 1e-9


def test_demo_matches_hamiltonian_evolution():
    report = qubit_demo(0.42, 0.7, phase=0.3)
    assert float(np.min(report.dynamics_fidelities)) >= 1 - 1e-10


def test_demo_rejects_degenerate_weight():
    with pytest.raises(ValueError):
        qubit_demo(0.0, 0.1)
    with pytest.raises(ValueError):
        qubit_demo(1.0, 0.1)


def test_demo_report_renders():
    report = qubit_demo(0.3, 0.0)
    text = report.render()
    assert "circuit matrix" in text
    assert "recovered" in text
    assert "(tol" in text
    assert "FAIL" not in text
