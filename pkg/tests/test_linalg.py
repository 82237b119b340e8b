import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import InvalidArgumentError
from src.linalg import (as_matrix, complete_to_unitary, dagger, hermitian_eig, is_hermitian, is_psd, is_unitary,
                        matrix_unit, operator_norm, partial_trace_apparatus, random_density, random_hermitian,
                        random_isometry, random_matrix, random_unitary, tensor, trace_distance, trace_norm)
from tests.helpers import SIGMA_X, SIGMA_Z


class TestAsMatrix:

    def test_rejects_non_square(self):
        with pytest.raises(InvalidArgumentError):
            as_matrix(np.zeros((2, 3)))

    def test_rejects_nan(self):
        with pytest.raises(InvalidArgumentError):
            as_matrix(np.array([[np.nan, 0], [0, 1]]))


class TestPartialTrace:

    @pytest.mark.parametrize("dim_s, dim_a", [(2, 2), (2, 3), (3, 2), (4, 5)])
    def test_product(self, dim_s, dim_a, rng):
        a = random_density(dim_s, rng)
        b = random_density(dim_a, rng)
        assert_allclose(partial_trace_apparatus(tensor(a, b), dim_s, dim_a), a, atol=1e-12)

    def test_composite_index_order(self):
        # |0><1| (x) |2><2| on 2 x 3 has its only entry at (0 * 3 + 2, 1 * 3 + 2)
        m = tensor(matrix_unit(2, 0, 1), matrix_unit(3, 2, 2))
        assert m[2, 5] == 1
        assert_allclose(partial_trace_apparatus(m, 2, 3), matrix_unit(2, 0, 1))

    def test_tensor_of_paulis(self):
        expected = np.array([[0, 0, 1, 0],
                             [0, 0, 0, -1],
                             [1, 0, 0, 0],
                             [0, -1, 0, 0]])
        assert_allclose(tensor(SIGMA_X, SIGMA_Z), expected)

    def test_bell_state_is_locally_maximally_mixed(self):
        bell = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)
        assert_allclose(partial_trace_apparatus(np.outer(bell, bell.conj()), 2, 2), np.eye(2) / 2, atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            partial_trace_apparatus(np.eye(6), 2, 2)


class TestNorms:

    def test_trace_norm_of_pauli(self):
        assert trace_norm(np.array([[1, 0], [0, -1]])) == pytest.approx(2.0)

    def test_operator_norm(self):
        assert operator_norm(np.diag([0.5, -3.0, 1.0])) == pytest.approx(3.0)

    def test_trace_norm_bounds_trace(self, rng):
        for dim in range(1, 7):
            m = random_matrix(dim, rng)
            assert trace_norm(m) >= abs(np.trace(m)) - 1e-12

    def test_trace_distance_orthogonal_pure_states(self):
        assert trace_distance(matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)) == pytest.approx(1.0)


class TestHermitian:

    def test_eig_sorted(self):
        eigenvalues, vectors = hermitian_eig(np.diag([3.0, -1.0, 2.0]))
        assert_allclose(eigenvalues, [-1.0, 2.0, 3.0])
        assert is_unitary(vectors)

    @pytest.mark.parametrize("dim", range(2, 13))
    def test_eig_reconstructs(self, dim, rng):
        h = random_hermitian(dim, rng)
        eigenvalues, vectors = hermitian_eig(h)
        assert np.all(np.diff(eigenvalues) >= 0)
        assert_allclose(dagger(vectors) @ vectors, np.eye(dim), atol=1e-12)
        assert_allclose(vectors @ np.diag(eigenvalues) @ dagger(vectors), h, atol=1e-10)

    def test_eig_rejects_non_hermitian(self):
        with pytest.raises(InvalidArgumentError):
            hermitian_eig(np.array([[0, 1], [0, 0]]))

    def test_psd(self):
        assert is_psd(np.diag([1.0, 0.0]))
        assert not is_psd(np.diag([1.0, -1e-3]))
        assert not is_hermitian(np.array([[0, 1], [0, 0]]))


class TestRandom:

    @pytest.mark.parametrize("dim", [1, 2, 5])
    def test_random_unitary(self, dim, rng):
        assert is_unitary(random_unitary(dim, rng))

    def test_reproducible(self):
        first = random_unitary(3, np.random.default_rng(7))
        second = random_unitary(3, np.random.default_rng(7))
        assert np.array_equal(first, second)

    def test_isometry(self, rng):
        v = random_isometry(5, 2, rng)
        assert_allclose(dagger(v) @ v, np.eye(2), atol=1e-12)
        with pytest.raises(InvalidArgumentError):
            random_isometry(2, 3, rng)

    @pytest.mark.parametrize("rank", [1, 2, 4])
    def test_random_density(self, rank, rng):
        rho = random_density(4, rng, rank)
        assert np.trace(rho).real == pytest.approx(1.0)
        assert np.linalg.matrix_rank(rho, tol=1e-10) == rank
        assert is_psd(rho)

    def test_complete_to_unitary(self, rng):
        columns = random_isometry(4, 2, rng)
        u = complete_to_unitary(columns, rng)
        assert is_unitary(u)
        assert_allclose(u[:, :2], columns)
