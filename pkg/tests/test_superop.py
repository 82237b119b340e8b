import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import InvalidArgumentError, NotCompletelyPositiveError
from src.linalg import dagger, matrix_unit, random_density, random_matrix, random_unitary
from src.superop import (Superoperator, apply, apply_by_decomposition, choi, decompose_trace_class, dual,
                         is_completely_positive, is_positive_sampled, is_trace_preserving, kraus_from_choi,
                         trace_of_map)
from tests.helpers import SIGMA_Z


def amplitude_damping(gamma):
    return Superoperator.from_kraus([np.array([[1, 0], [0, np.sqrt(1 - gamma)]]),
                                     np.array([[0, np.sqrt(gamma)], [0, 0]])])


class TestSuperoperator:

    def test_conjugation_acts_on_non_hermitian(self, rng):
        u = random_unitary(3, rng)
        x = random_matrix(3, rng)
        assert_allclose(apply(Superoperator.conjugation(u), x), u @ x @ dagger(u), atol=1e-12)

    def test_from_function_matches_kraus(self, rng):
        k = [random_matrix(2, rng), random_matrix(2, rng)]
        tabulated = Superoperator.from_function(lambda x: sum(a @ x @ dagger(a) for a in k), 2)
        assert tabulated.close_to(Superoperator.from_kraus(k), 1e-12)

    def test_algebra(self, rng):
        a = Superoperator.conjugation(random_unitary(2, rng))
        b = amplitude_damping(0.3)
        x = random_matrix(2, rng)
        assert_allclose(apply(a + b, x), apply(a, x) + apply(b, x), atol=1e-12)
        assert_allclose(apply(a - 2 * b, x), apply(a, x) - 2 * apply(b, x), atol=1e-12)
        assert_allclose(apply(a.after(b), x), apply(a, apply(b, x)), atol=1e-12)

    def test_one_sided_compositions(self, rng):
        t = amplitude_damping(0.4)
        p = matrix_unit(2, 0, 0)
        x = random_matrix(2, rng)
        assert_allclose(apply(t.after_left_multiplication(p), x), apply(t, p @ x), atol=1e-12)
        assert_allclose(apply(t.after_right_multiplication(p), x), apply(t, x @ p), atol=1e-12)
        assert_allclose(apply(t.after_sandwich(p), x), apply(t, p @ x @ p), atol=1e-12)

    def test_dimension_checks(self):
        with pytest.raises(InvalidArgumentError):
            Superoperator.identity(2) + Superoperator.identity(3)
        with pytest.raises(InvalidArgumentError):
            apply(Superoperator.identity(2), np.eye(3))

    def test_scaling_only_by_numbers(self):
        t = amplitude_damping(0.3)
        assert_allclose((0.5 * t).rep, 0.5 * t.rep)
        assert_allclose((t * np.float64(2.0)).rep, 2.0 * t.rep)
        with pytest.raises(InvalidArgumentError):
            t * Superoperator.identity(2)

    def test_trace_of_map(self):
        assert trace_of_map(amplitude_damping(0.2), np.diag([0.3, 0.7])) == pytest.approx(1.0)


class TestDual:

    def test_dual_of_conjugation(self, rng):
        u = random_unitary(3, rng)
        x = random_matrix(3, rng)
        assert_allclose(apply(dual(Superoperator.conjugation(u)), x), dagger(u) @ x @ u, atol=1e-12)

    def test_defining_identity(self, rng):
        t = amplitude_damping(0.6)
        x = random_matrix(2, rng)
        rho = random_density(2, rng)
        assert np.trace(x @ apply(t, rho)) == pytest.approx(np.trace(apply(dual(t), x) @ rho), abs=1e-12)

    def test_dual_of_sum_is_sum_of_duals(self, rng):
        parts = [amplitude_damping(0.2), Superoperator.conjugation(random_unitary(2, rng)),
                 Superoperator.identity(2).after_sandwich(matrix_unit(2, 1, 1))]
        total = sum(parts, Superoperator.zero(2))
        assert dual(total).close_to(sum((dual(p) for p in parts), Superoperator.zero(2)), 1e-12)

    def test_trace_preserving_iff_unital_dual(self):
        assert is_trace_preserving(amplitude_damping(0.5))
        assert not is_trace_preserving(0.5 * Superoperator.identity(2))


class TestChoi:

    def test_round_trip(self):
        t = amplitude_damping(0.25)
        assert choi(t).to_superoperator().close_to(t, 1e-12)

    def test_transpose_is_positive_not_cp(self):
        transpose = Superoperator.transpose_map(2)
        assert is_positive_sampled(transpose, trials=20, seed=0)
        assert not is_completely_positive(transpose)
        with pytest.raises(NotCompletelyPositiveError):
            kraus_from_choi(choi(transpose))

    def test_left_multiplication_is_not_positive(self):
        t = Superoperator.identity(2).after_left_multiplication(SIGMA_Z)
        assert not is_positive_sampled(t, trials=10, seed=0)

    def test_kraus_reconstructs_map(self):
        t = amplitude_damping(0.7)
        kraus = kraus_from_choi(choi(t))
        assert len(kraus) == 2
        assert Superoperator.from_kraus(kraus).close_to(t, 1e-10)

    def test_unitary_has_kraus_rank_one(self, rng):
        kraus = kraus_from_choi(choi(Superoperator.conjugation(random_unitary(3, rng))))
        assert len(kraus) == 1


class TestDecomposition:

    @pytest.mark.parametrize("dim", [1, 2, 4])
    def test_reassembles(self, dim, rng):
        m = random_matrix(dim, rng)
        decomposition = decompose_trace_class(m)
        assert all(lam >= 0 for lam in decomposition.lambdas)
        assert_allclose(decomposition.reassemble(), m, atol=1e-12)

    def test_zero_parts_are_maximally_mixed(self):
        decomposition = decompose_trace_class(np.diag([0.2, 0.8]))
        assert decomposition.lambdas[1:] == (0.0, 0.0, 0.0)
        assert_allclose(decomposition.parts[3].matrix, np.eye(2) / 2)

    def test_apply_through_density_operators(self, rng):
        t = amplitude_damping(0.35)
        m = random_matrix(2, rng)
        assert_allclose(apply_by_decomposition(t, m), apply(t, m), atol=1e-12)
