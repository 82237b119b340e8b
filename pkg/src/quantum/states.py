from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError
from src.linalg import as_matrix, is_hermitian, min_eigenvalue


def _frozen(m):
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Positive unit-trace operator: the state rho of the object or sigma of the apparatus.
    The matrix is stored read-only, so instances can be shared freely.
    """
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, "density operator")
        tol = DEFAULT_TOLERANCES
        if not is_hermitian(m, tol.hermiticity):
            raise InvalidArgumentError("density operator is not Hermitian")
        trace = np.trace(m)
        if abs(trace - 1) > tol.unit_trace:
            raise InvalidArgumentError(f"density operator has trace {trace:.15g}, expected 1")
        lowest = min_eigenvalue(m)
        if lowest < -tol.psd:
            raise InvalidArgumentError(f"density operator is not positive (eigenvalue {lowest:.3e})")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self):
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, dim):
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    @classmethod
    def from_vector(cls, vector):
        return PureState(vector).density()

    @classmethod
    def normalized(cls, m):
        """
        Build a density operator from a positive operator with nonzero trace
        """
        m = as_matrix(m)
        return cls(m / np.real(np.trace(m)))

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True, eq=False)
class PureState:
    """
    Unit vector psi, with psi -> |psi><psi| as its density operator
    """
    vector: np.ndarray

    def __post_init__(self):
        v = np.array(self.vector, dtype=np.complex128).reshape(-1)
        if v.size < 1 or not np.all(np.isfinite(v)):
            raise InvalidArgumentError("pure state needs a finite non-empty vector")
        if abs(la.norm(v) - 1) > DEFAULT_TOLERANCES.unit_trace:
            raise InvalidArgumentError(f"pure state vector has norm {la.norm(v):.15g}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @property
    def dim(self):
        return self.vector.size

    def projector(self):
        return np.outer(self.vector, np.conj(self.vector))

    def density(self):
        return DensityOperator(self.projector())


def mix(alpha, rho1, rho2):
    """
    Convex mixture alpha * rho1 + (1 - alpha) * rho2
    :param alpha: weight in [0, 1]
    :param rho1: DensityOperator
    :param rho2: DensityOperator of the same dimension
    :return: DensityOperator
    """
    if not 0 <= alpha <= 1:
        raise InvalidArgumentError(f"mixing weight must lie in [0, 1], got {alpha}")
    if rho1.dim != rho2.dim:
        raise InvalidArgumentError(f"cannot mix states of dimensions {rho1.dim} and {rho2.dim}")
    return DensityOperator(alpha * rho1.matrix + (1 - alpha) * rho2.matrix)


def as_density(rho):
    """
    Accept a DensityOperator or a matrix, and always return a validated DensityOperator
    """
    return rho if isinstance(rho, DensityOperator) else DensityOperator(rho)
