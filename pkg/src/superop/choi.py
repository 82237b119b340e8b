import logging
from dataclasses import dataclass

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import NotCompletelyPositiveError
from src.linalg import hermitian_eig, is_psd, matrix_unit, min_eigenvalue
from .superoperator import Superoperator, apply, vec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """
    Block matrix [T(|i><j|)]_{ij}; positive semidefinite exactly when T is completely positive
    """
    dim: int
    matrix: np.ndarray

    def block(self, i, j):
        d = self.dim
        return self.matrix[i * d:(i + 1) * d, j * d:(j + 1) * d]

    def is_psd(self, tol=DEFAULT_TOLERANCES.psd):
        return is_psd(self.matrix, tol)

    def min_eigenvalue(self):
        return min_eigenvalue(self.matrix)

    def to_superoperator(self):
        """
        Inverse of choi(): the column of |i><j| in the representation is vec of block (i, j)
        """
        d = self.dim
        rep = np.zeros((d * d, d * d), dtype=np.complex128)
        for i in range(d):
            for j in range(d):
                rep[:, i + j * d] = vec(self.block(i, j))
        return Superoperator(d, rep)


def choi(s):
    """
    :param s: Superoperator
    :return: ChoiMatrix sum_ij |i><j| (x) s(|i><j|)
    """
    d = s.dim
    matrix = sum(np.kron(matrix_unit(d, i, j), apply(s, matrix_unit(d, i, j)))
                 for i in range(d) for j in range(d))
    return ChoiMatrix(d, matrix)


def is_completely_positive(s, tol=DEFAULT_TOLERANCES.psd):
    return choi(s).is_psd(tol)


def kraus_from_choi(c, rank_tol=DEFAULT_TOLERANCES.rank):
    """
    Canonical Kraus operators from the spectral decomposition of the Choi matrix.
    An eigenvector v with v[i * d + a] = K[a, i] gives the Kraus operator sqrt(lambda) K.
    :param c: ChoiMatrix
    :param rank_tol: eigenvalues at or below rank_tol are dropped
    :return: list of matrices, largest weight first
    """
    eigenvalues, eigenvectors = hermitian_eig(c.matrix)
    if eigenvalues[0] < -rank_tol:
        raise NotCompletelyPositiveError(float(eigenvalues[0]))
    kraus_operators = []
    for idx in np.argsort(eigenvalues)[::-1]:
        if eigenvalues[idx] <= rank_tol:
            break
        k = np.sqrt(eigenvalues[idx]) * eigenvectors[:, idx].reshape(c.dim, c.dim).T
        kraus_operators.append(k)
    logger.debug("Kraus rank %d from a %d x %d Choi matrix", len(kraus_operators), *c.matrix.shape)
    return kraus_operators
