"""
Tests for finite-s phase states, the phase operator and phase distributions.
"""

import math

import numpy as np
import pytest

from pb_oscillator.errors import DimensionError, DomainError, NormalizationError
from pb_oscillator.linalg import hermiticity_defect, unitarity_defect
from pb_oscillator.phase import (
    build_phase_basis,
    completeness_defect,
    number_moments,
    number_phase_commutator,
    number_state,
    phase_distribution,
    phase_exponential,
    phase_moments,
    phase_state,
    random_phase_report,
    symmetric_theta0,
)


def test_phase_state_components_have_equal_magnitude():
    state = phase_state(4, 0.7)
    np.testing.assert_allclose(np.abs(state), np.full(5, 1 / math.sqrt(5)))
    assert state[1] == pytest.approx(np.exp(0.7j) / math.sqrt(5))


def test_grid_phases():
    basis = build_phase_basis(3, theta0=0.25)
    np.testing.assert_allclose(basis.thetas, 0.25 + np.array([0, 0.5, 1.0, 1.5]) * math.pi)
    assert basis.dim == 4


@pytest.mark.parametrize("s", [1, 2, 5, 16, 64])
def test_phase_basis_is_complete_and_orthonormal(s):
    basis = build_phase_basis(s, theta0=0.3)
    assert completeness_defect(basis) <= 1e-10
    np.testing.assert_allclose(
        basis.states.conj().T @ basis.states, np.eye(s + 1), atol=1e-10
    )


@pytest.mark.parametrize("s", [1, 3, 8])
def test_phase_operator_eigenpairs(s):
    basis = build_phase_basis(s)
    assert hermiticity_defect(basis.phase_op) <= 1e-12
    for m, theta in enumerate(basis.thetas):
        state = basis.states[:, m]
        np.testing.assert_allclose(basis.phase_op @ state, theta * state, atol=1e-10)


@pytest.mark.parametrize("s", [1, 7, 32, 64])
def test_phase_exponential_is_unitary(s):
    assert unitarity_defect(phase_exponential(build_phase_basis(s))) <= 1e-9


def test_number_phase_commutator_at_s1():
    C = number_phase_commutator(build_phase_basis(1, 0.0))
    np.testing.assert_allclose(C, math.pi / 2 * np.array([[0, -1], [1, 0]]), atol=1e-12)


@pytest.mark.parametrize("s", [2, 5, 9])
def test_number_phase_commutator_structure(s):
    C = number_phase_commutator(build_phase_basis(s, theta0=0.4))
    np.testing.assert_allclose(C, -C.conj().T, atol=1e-12)
    np.testing.assert_allclose(np.diag(C), np.zeros(s + 1), atol=1e-12)


class TestPhaseDistribution:
    """p_m = |<theta_m|psi>|^2."""

    def test_vacuum_is_uniform_at_s7(self):
        p = phase_distribution(number_state(7, 0), build_phase_basis(7))
        np.testing.assert_allclose(p, np.full(8, 0.125), atol=1e-12)

    @pytest.mark.parametrize("s", [1, 4, 12, 64])
    def test_every_number_state_is_uniform(self, s):
        basis = build_phase_basis(s, theta0=-0.2)
        for n in (0, s // 2, s):
            p = phase_distribution(number_state(s, n), basis)
            np.testing.assert_allclose(p, np.full(s + 1, 1 / (s + 1)), atol=1e-12)

    def test_phase_state_is_concentrated(self):
        basis = build_phase_basis(5)
        p = phase_distribution(basis.states[:, 2], basis)
        expected = np.zeros(6)
        expected[2] = 1.0
        np.testing.assert_allclose(p, expected, atol=1e-12)

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(1)
        state = rng.normal(size=6) + 1j * rng.normal(size=6)
        state /= np.linalg.norm(state)
        assert phase_distribution(state, build_phase_basis(5)).sum() == pytest.approx(1.0, abs=1e-12)

    def test_unnormalized_state_raises(self):
        with pytest.raises(NormalizationError) as excinfo:
            phase_distribution([1, 1], build_phase_basis(1))
        assert excinfo.value.norm == pytest.approx(math.sqrt(2))

    def test_wrong_length_raises(self):
        with pytest.raises(DimensionError, match="expected 2"):
            phase_distribution([1, 0, 0], build_phase_basis(1))


def test_number_state_bounds():
    with pytest.raises(DomainError, match="does not exist"):
        number_state(3, 4)
    with pytest.raises(DomainError):
        build_phase_basis(0)


def test_moments_of_number_state():
    moments = number_moments(number_state(6, 4))
    assert moments.mean == pytest.approx(4.0)
    assert moments.variance == pytest.approx(0.0)


def test_phase_moments_of_phase_state():
    basis = build_phase_basis(4)
    moments = phase_moments(basis.states[:, 3], basis)
    assert moments.mean == pytest.approx(basis.thetas[3])
    assert moments.variance == pytest.approx(0.0, abs=1e-12)


def test_symmetric_grid_is_centred():
    s = 6
    basis = build_phase_basis(s, symmetric_theta0(s))
    assert basis.thetas.sum() == pytest.approx(0.0, abs=1e-12)


def test_random_phase_report_approaches_pi_squared_over_three():
    rows = random_phase_report([1, 4, 16, 64])
    for row in rows:
        expected = (math.pi**2 / 3) * (1 - 1 / (row.s + 1) ** 2)
        assert row.variance == pytest.approx(expected, rel=1e-10)
    gaps = [row.gap for row in rows]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-3
