"""
Tests for the supersymmetric sector: block operators, the SUSY algebra, the
multiphoton Jaynes-Cummings Hamiltonian and the N' eigenvalue law.
"""

import math

import numpy as np
import pytest

from pb_oscillator.errors import DomainError
from pb_oscillator.linalg import identity
from pb_oscillator.relations import FULL, WINDOW
from pb_oscillator.susy import (
    JcParams,
    QuasiAlgebraCell,
    build_susy_rep,
    default_block_dim,
    jc_dressed_energies,
    jc_hamiltonian_direct,
    jc_hamiltonian_susy_form,
    jc_spectrum_check,
    nprime_eigen_check,
    quasialgebra_check,
    safe_cells,
    supercharge_pairing,
    susy_pb_hamiltonian,
    verify_susy_algebra,
)


class TestSusyRep:
    """Block operators."""

    def test_k1_d2_supercharge(self):
        rep = build_susy_rep(1, 2)
        np.testing.assert_array_equal(rep.Q[:2, 2:], [[0, 1], [0, 0]])
        np.testing.assert_array_equal(rep.Q[2:, :2], np.zeros((2, 2)))

    def test_k2_nprime_bottom_block(self):
        rep = build_susy_rep(2, 4)
        np.testing.assert_allclose(rep.Nprime[4:, 4:].real.diagonal(), [0, 0, 1, 3], atol=1e-12)

    @pytest.mark.parametrize("k, D", [(1, 3), (2, 7), (3, 10)])
    def test_structural_invariants(self, k, D):
        rep = build_susy_rep(k, D)
        np.testing.assert_array_equal(rep.Q_dag, rep.Q.conj().T)
        np.testing.assert_array_equal(rep.Q @ rep.Q, np.zeros((2 * D, 2 * D)))
        np.testing.assert_array_equal(rep.Q_dag @ rep.Q_dag, np.zeros((2 * D, 2 * D)))
        np.testing.assert_array_equal(rep.sigma_z, np.diag([1] * D + [-1] * D))
        assert rep.window == D - k
        assert rep.dim == 2 * D

    def test_number_operator_blocks(self):
        k, D = 2, 6
        rep = build_susy_rep(k, D)
        n = np.arange(D)
        np.testing.assert_allclose(rep.N.real.diagonal()[:D], n + k / 2)
        np.testing.assert_allclose(rep.N.real.diagonal()[D:], n + 1 - k / 2)

    def test_projector_keeps_first_window_states_per_block(self):
        rep = build_susy_rep(2, 5)
        np.testing.assert_array_equal(rep.projector_W.real.diagonal(), [1, 1, 1, 0, 0] * 2)

    @pytest.mark.parametrize("k, D", [(2, 2), (3, 1), (0, 4), (-1, 4)])
    def test_bad_parameters_raise(self, k, D):
        with pytest.raises(DomainError):
            build_susy_rep(k, D)

    def test_window_larger_than_safe_raises(self):
        with pytest.raises(DomainError, match="Window"):
            build_susy_rep(2, 6, window=5)

    def test_default_block_dim(self):
        assert [default_block_dim(k) for k in (1, 2, 3)] == [12, 16, 20]


class TestSusyAlgebra:
    """Residuals of the SUSY algebra."""

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_all_relations_pass(self, k):
        report = verify_susy_algebra(build_susy_rep(k, default_block_dim(k)))
        assert report.passed, report.failures()
        assert report["Q^2=0"].residual == 0.0
        assert report["(Q_dag)^2=0"].residual == 0.0

    def test_scopes(self):
        report = verify_susy_algebra(build_susy_rep(2, 8))
        assert report["{Q,sigma_z}=0"].scope == FULL
        assert report["[Q,sigma_z]=-2Q"].scope == FULL
        assert report["[N,Q]=-Q"].scope == WINDOW
        assert report["[N,Q]=-Q (full)"].scope == FULL

    def test_tolerances_can_be_overridden(self):
        rep = build_susy_rep(2, 8)
        report = verify_susy_algebra(rep, tolerance=1e-6, exact_tolerance=1e-7)
        assert report["{Q,sigma_z}=0"].tolerance == 1e-7
        assert report["[Q,Q_dag]=N'sigma_z"].tolerance == 1e-6
        assert report["Q^2=0"].tolerance == 0.0
        cells = quasialgebra_check(QuasiAlgebraCell(m=1, k=2), 8, tolerance=1e-6)
        assert cells["N'=C"].tolerance == pytest.approx(3e-6)

    def test_k1_d6_commutator(self):
        report = verify_susy_algebra(build_susy_rep(1, 6))
        assert report["[Q,Q_dag]=N'sigma_z"].residual <= 1e-12

    def test_k2_d8_square_of_difference(self):
        report = verify_susy_algebra(build_susy_rep(2, 8))
        assert report["(Q_dag-Q)^2=-N'"].residual <= 1e-12

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_small_blocks_still_pass_on_window(self, k):
        report = verify_susy_algebra(build_susy_rep(k, 2 * k + 4))
        assert report.passed


class TestJcHamiltonian:
    """Direct and supercharge forms of the multiphoton JC Hamiltonian."""

    def test_params_validation(self):
        with pytest.raises(DomainError, match="must be positive"):
            JcParams(omega=0.0, omega0=1.0, g=0.1, k=1)
        with pytest.raises(DomainError, match="positive integer"):
            JcParams(omega=1.0, omega0=1.0, g=0.1, k=0)

    def test_detuning_and_coupling(self):
        p = JcParams(omega=1.5, omega0=2.0, g=0.2j, k=3)
        assert p.delta == pytest.approx(2.5)
        assert p.supercharge_coupling == pytest.approx(0.2j * math.sqrt(6))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_forms_agree_on_random_draws(self, k):
        rng = np.random.default_rng(100 + k)
        D = default_block_dim(k)
        rep = build_susy_rep(k, D)
        for _ in range(50):
            p = JcParams(
                omega=rng.uniform(0.1, 3.0),
                omega0=rng.uniform(-3.0, 3.0),
                g=complex(rng.normal(), rng.normal()),
                k=k,
            )
            difference = jc_hamiltonian_direct(p, D) - jc_hamiltonian_susy_form(p, rep)
            assert np.max(np.abs(difference)) <= 1e-11

    def test_zero_coupling_k1(self):
        p = JcParams(omega=1.0, omega0=0.7, g=0.0, k=1)
        rep = build_susy_rep(1, 6)
        difference = jc_hamiltonian_direct(p, 6) - jc_hamiltonian_susy_form(p, rep)
        assert np.max(np.abs(difference)) == pytest.approx(0.0, abs=1e-12)

    def test_direct_form_is_hermitian(self):
        H = jc_hamiltonian_direct(JcParams(1.0, 1.2, 0.3 - 0.4j, 2), 9)
        np.testing.assert_allclose(H, H.conj().T)

    def test_mismatched_rep_raises(self):
        with pytest.raises(DomainError, match="k=2"):
            jc_hamiltonian_susy_form(JcParams(1.0, 1.0, 0.1, 1), build_susy_rep(2, 6))

    def test_dressed_energies_closed_form(self):
        p = JcParams(omega=1.0, omega0=1.0, g=0.5, k=1)
        low, high = jc_dressed_energies(p, 0)
        assert low == pytest.approx(0.5 - 0.5)
        assert high == pytest.approx(0.5 + 0.5)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_spectrum_matches_closed_form(self, k):
        p = JcParams(omega=1.3, omega0=0.4 * k, g=0.2 + 0.1j, k=k)
        rows = jc_spectrum_check(p, default_block_dim(k))
        assert len(rows) == default_block_dim(k) - 2 * k
        for row in rows:
            assert row.residual <= 1e-9 * max(1.0, abs(row.expected[1]))


class TestQuasiAlgebra:
    """The N' eigenvalue law and the 2x2 quasialgebra."""

    def test_cell_binomial(self):
        assert QuasiAlgebraCell(1, 2).C == 3
        assert QuasiAlgebraCell(2, 2).C == 6
        assert QuasiAlgebraCell(0, 5).C == 1
        assert QuasiAlgebraCell(12, 8).C == math.comb(20, 8)

    def test_cell_validation(self):
        with pytest.raises(DomainError):
            QuasiAlgebraCell(-1, 2)
        with pytest.raises(DomainError):
            QuasiAlgebraCell(1, 0)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_nprime_eigenvalues(self, k):
        for m in range(0, 9 - k):
            check = nprime_eigen_check(k, m, 20)
            assert check.passed
            assert check.expected == math.comb(m + k, k)
            assert check.observed == pytest.approx((check.expected, check.expected), abs=1e-12)

    def test_window_violation_raises(self):
        with pytest.raises(DomainError, match="safe window"):
            nprime_eigen_check(2, 5, 8)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_restricted_relations_exact(self, k):
        D = default_block_dim(k)
        for cell in safe_cells(k, D):
            report = quasialgebra_check(cell, D)
            assert report.passed, report.failures()
            assert report.notes["C"] == cell.C
            assert report["leakage(Q)"].residual <= 1e-12

    def test_safe_cells(self):
        cells = safe_cells(2, 12)
        assert [cell.m for cell in cells] == list(range(8))
        assert cells[1].C == 3

    @pytest.mark.parametrize(
        "m, k, Omega, energy", [(0, 1, 2.0, 1.0), (1, 2, 1.0, 1.5), (2, 2, 1.0, 3.0)]
    )
    def test_energies(self, m, k, Omega, energy):
        result = susy_pb_hamiltonian(QuasiAlgebraCell(m, k), Omega)
        assert result.energy == pytest.approx(energy)
        np.testing.assert_allclose(result.restricted_H, energy * identity(2), atol=1e-12)

    def test_energy_rejects_non_positive_omega(self):
        with pytest.raises(DomainError, match="Omega"):
            susy_pb_hamiltonian(QuasiAlgebraCell(0, 1), 0.0)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_supercharge_pairing(self, k):
        rep = build_susy_rep(k, 2 * k + 5 + 4)
        g = 0.3 - 0.7j
        for m in range(5):
            pairing = supercharge_pairing(rep, m, g)
            root = abs(g) * math.sqrt(math.comb(m + k, k))
            assert pairing.expected == pytest.approx((-root, root))
            assert pairing.residual <= 1e-12 * max(1.0, root)
