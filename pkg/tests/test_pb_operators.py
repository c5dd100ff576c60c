"""
Tests for the truncated P-B oscillator family and its commutator ladder.
"""

import math

import numpy as np
import pytest

from pb_oscillator.errors import DomainError, LadderNotApplicable
from pb_oscillator.linalg import commutator, identity
from pb_oscillator.pb_operators import (
    GENERATOR_NAMES,
    annihilation_operator,
    bosonic_limit_report,
    build_family,
    check_ladder_relations,
    check_su2_relations,
    derive_ladder,
    oscillator_hamiltonian,
    traceless_defect,
)


class TestDisplayedMatrices:
    """Entry-exact regression against the s=1 and s=2 matrices."""

    def test_s1_matrices(self):
        family = build_family(1)
        np.testing.assert_array_equal(family.a, [[0, 1], [0, 0]])
        np.testing.assert_array_equal(family.a_dag, [[0, 0], [1, 0]])
        np.testing.assert_array_equal(family.A, [[1, 0], [0, -1]])
        assert family.derived == {}
        assert not family.has_ladder

    def test_s2_matrices(self):
        family = build_family(2)
        r2 = math.sqrt(2)
        np.testing.assert_allclose(family.a, [[0, 1, 0], [0, 0, r2], [0, 0, 0]], atol=1e-15)
        np.testing.assert_allclose(family.a_dag, [[0, 0, 0], [1, 0, 0], [0, r2, 0]], atol=1e-15)
        np.testing.assert_array_equal(family.A, np.diag([1, 1, -2]))

    def test_s2_ladder_closed_forms(self):
        family = build_family(2)
        M = np.zeros((3, 3))
        M[1, 2] = -1
        F = np.zeros((3, 3))
        F[0, 2] = 1
        np.testing.assert_allclose(family.derived["M"], M, atol=1e-15)
        np.testing.assert_allclose(family.derived["M_dag"], M.T, atol=1e-15)
        np.testing.assert_allclose(family.derived["K"], np.diag([0, -1, 1]), atol=1e-15)
        np.testing.assert_allclose(family.derived["F"], F, atol=1e-15)
        np.testing.assert_allclose(family.derived["F_dag"], F.T, atol=1e-15)

    def test_s3_A_diagonal(self):
        np.testing.assert_array_equal(build_family(3).A.real.diagonal(), [1, 1, 1, -3])


def test_a_commutator_with_A_at_s2():
    family = build_family(2)
    expected = np.zeros((3, 3))
    expected[1, 2] = -3 * math.sqrt(2)
    np.testing.assert_allclose(commutator(family.a, family.A), expected, atol=1e-12)


def test_s4_A_diagonal_is_traceless():
    A = build_family(4).A.real
    np.testing.assert_array_equal(A.diagonal(), [1, 1, 1, 1, -4])
    assert np.trace(A) == 0.0


def test_annihilation_matrix_elements():
    a = annihilation_operator(5)
    for m in range(6):
        for n in range(6):
            expected = math.sqrt(n) if m == n - 1 else 0.0
            assert a[m, n] == pytest.approx(expected)


@pytest.mark.parametrize("s", [0, -1, 1.5, True])
def test_bad_cutoff_raises(s):
    with pytest.raises(DomainError, match="positive integer"):
        build_family(s)


def test_derive_ladder_at_s1_raises():
    with pytest.raises(LadderNotApplicable):
        derive_ladder(build_family(1))


def test_check_ladder_relations_needs_ladder():
    with pytest.raises(LadderNotApplicable):
        check_ladder_relations(build_family(1))


@pytest.mark.parametrize("s", range(1, 11))
def test_commutator_of_a_and_a_dag_is_A(s):
    family = build_family(s)
    assert np.max(np.abs(commutator(family.a, family.a_dag) - family.A)) <= 1e-12


@pytest.mark.parametrize("s", range(1, 11))
def test_generators_are_traceless(s):
    assert traceless_defect(build_family(s)) <= 1e-12


@pytest.mark.parametrize("s", range(2, 13))
def test_ladder_relations_hold(s):
    report = check_ladder_relations(build_family(s))
    assert report.passed, report.failures()
    assert report.max_residual <= 1e-12


def test_s2_only_relations_asserted_at_s2():
    report = check_ladder_relations(build_family(2))
    assert "[a_dag,M]=-sqrt(2)K" in report
    assert "[a,M_dag]=sqrt(2)K" in report
    assert "[a_dag,M]=-sqrt(2)K" not in check_ladder_relations(build_family(3))


@pytest.mark.parametrize("s", [2, 3, 6])
def test_observed_coefficients_along_K(s):
    notes = check_ladder_relations(build_family(s)).notes
    assert notes["coefficient [a_dag,M] along K"] == pytest.approx(-math.sqrt(s))
    assert notes["coefficient [a,M_dag] along K"] == pytest.approx(math.sqrt(s))


def test_su2_relations_at_s1():
    report = check_su2_relations(build_family(1))
    assert report.passed
    assert "{a,a_dag}=I" in report
    assert report["[A,a]=2a"].residual <= 1e-15
    assert report["[A,a_dag]=-2a_dag"].residual <= 1e-15


def test_su2_relations_reject_larger_cutoffs():
    with pytest.raises(DomainError, match="needs s=1"):
        check_su2_relations(build_family(2))


def test_provenance_records_brackets():
    family = build_family(4)
    assert family.provenance["M"].bracket == ("a", "A")
    assert family.provenance["M"].coefficient == pytest.approx(5 * 2.0)
    assert family.provenance["K"].coefficient == -1.0
    assert family.provenance["F"].coefficient == pytest.approx(-math.sqrt(3))
    assert "[a,A]" in family.provenance["M"].formula


def test_generators_in_canonical_order():
    assert tuple(build_family(3).generators()) == GENERATOR_NAMES
    assert tuple(build_family(1).generators()) == ("a", "a_dag", "A")


def test_number_operator_is_separate_from_generators():
    family = build_family(3)
    np.testing.assert_array_equal(family.generator("N"), np.diag([0, 1, 2, 3]))
    assert "N" not in family.generators()
    with pytest.raises(KeyError, match="no generator 'M'"):
        build_family(1).generator("M")


def test_family_matrices_are_read_only():
    family = build_family(2)
    with pytest.raises(ValueError):
        family.a[0, 1] = 5


class TestBosonicLimit:
    """A tends to the identity on a fixed window as s grows."""

    def test_window_residuals_are_exactly_zero(self):
        report = bosonic_limit_report([10, 20, 50], window=5)
        assert report.passed
        assert [row.s for row in report.rows] == [10, 20, 50]
        for row in report.rows:
            assert row.A_residual == 0.0
            assert row.derived_residual == 0.0

    def test_window_touching_top_state_is_rejected(self):
        with pytest.raises(DomainError, match="smaller than every cutoff"):
            bosonic_limit_report([4, 10], window=4)

    def test_empty_cutoff_list_is_rejected(self):
        with pytest.raises(DomainError, match="at least one cutoff"):
            bosonic_limit_report([], window=2)


def test_oscillator_hamiltonian_is_fermionic_at_s1():
    np.testing.assert_allclose(oscillator_hamiltonian(build_family(1), 2.0), identity(2))


def test_oscillator_hamiltonian_levels_below_the_top():
    H = oscillator_hamiltonian(build_family(4), 1.0)
    np.testing.assert_allclose(H.real.diagonal(), [0.5, 1.5, 2.5, 3.5, 2.0])


def test_oscillator_hamiltonian_rejects_non_positive_frequency():
    with pytest.raises(DomainError, match="must be positive"):
        oscillator_hamiltonian(build_family(2), 0.0)
