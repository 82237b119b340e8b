import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from src.config import DEFAULT_TOLERANCES, EIGENVALUE_DECIMALS
from src.errors import InvalidArgumentError, NumericalConsistencyError
from src.linalg import as_matrix, dagger, hermitian_eig, max_abs
from .states import as_density

logger = logging.getLogger(__name__)


def snap_eigenvalue(value):
    """
    Round an eigenvalue so that outcome lookup by real value is an exact match.
    Adding 0.0 turns -0.0 into 0.0.
    """
    return float(np.round(float(value), EIGENVALUE_DECIMALS)) + 0.0


class Outcome(NamedTuple):
    eigenvalue: float
    projector: np.ndarray


@dataclass(frozen=True, eq=False)
class DiscreteObservable:
    """
    A discrete observable stored as its spectral family: (eigenvalue a, projection E(a)) pairs,
    sorted by ascending eigenvalue. E(a) is the zero operator for any real a that is not an eigenvalue.
    """
    dim: int
    outcomes: tuple

    def __post_init__(self):
        tol = DEFAULT_TOLERANCES.hermiticity
        if self.dim < 1 or len(self.outcomes) < 1:
            raise InvalidArgumentError("an observable needs a positive dimension and at least one outcome")
        outcomes = []
        for eigenvalue, projector in self.outcomes:
            projector = as_matrix(projector, "projector").copy()
            if projector.shape[0] != self.dim:
                raise InvalidArgumentError(f"projector of dimension {projector.shape[0]} "
                                           f"on a {self.dim}-dimensional observable")
            if max_abs(projector @ projector - projector) > tol or max_abs(projector - dagger(projector)) > tol:
                raise InvalidArgumentError(f"E({eigenvalue}) is not an orthogonal projection")
            projector.setflags(write=False)
            outcomes.append(Outcome(snap_eigenvalue(eigenvalue), projector))
        outcomes.sort(key=lambda outcome: outcome.eigenvalue)

        eigenvalues = [outcome.eigenvalue for outcome in outcomes]
        if len(set(eigenvalues)) != len(eigenvalues):
            raise InvalidArgumentError(f"eigenvalues must be pairwise distinct, got {eigenvalues}")
        for i in range(len(outcomes)):
            for j in range(i + 1, len(outcomes)):
                if max_abs(outcomes[i].projector @ outcomes[j].projector) > tol:
                    raise InvalidArgumentError(f"projectors of {eigenvalues[i]} and {eigenvalues[j]} "
                                               f"are not orthogonal")
        total = sum(outcome.projector for outcome in outcomes)
        if max_abs(total - np.eye(self.dim)) > tol:
            raise InvalidArgumentError("projectors do not sum to the identity")
        object.__setattr__(self, "outcomes", tuple(outcomes))

    @property
    def eigenvalues(self):
        return [outcome.eigenvalue for outcome in self.outcomes]

    def has_outcome(self, a):
        a = snap_eigenvalue(a)
        return any(outcome.eigenvalue == a for outcome in self.outcomes)

    def projector(self, a):
        """
        :param a: real number
        :return: E(a), the zero matrix when a is not an eigenvalue
        """
        a = snap_eigenvalue(a)
        for outcome in self.outcomes:
            if outcome.eigenvalue == a:
                return outcome.projector
        return np.zeros((self.dim, self.dim), dtype=np.complex128)

    def ranks(self):
        return {outcome.eigenvalue: int(round(np.real(np.trace(outcome.projector)))) for outcome in self.outcomes}

    def is_nondegenerate(self):
        return all(rank == 1 for rank in self.ranks().values())

    def to_hermitian(self):
        return sum(outcome.eigenvalue * outcome.projector for outcome in self.outcomes)

    def conjugated(self, v):
        """
        :param v: unitary on the same space
        :return: the observable V A V^dagger
        """
        return DiscreteObservable(self.dim, tuple((a, v @ p @ dagger(v)) for a, p in self.outcomes))

    @classmethod
    def trivial(cls, dim):
        """
        Single-outcome observable 1 * identity
        """
        return cls(dim, ((1.0, np.eye(dim, dtype=np.complex128)),))

    @classmethod
    def from_basis(cls, eigenvalues, basis):
        """
        Nondegenerate observable sum_n a_n |phi_n><phi_n|
        :param eigenvalues: list of distinct reals
        :param basis: matrix whose columns are the orthonormal vectors phi_n
        """
        basis = np.asarray(basis, dtype=np.complex128)
        return cls(basis.shape[0], tuple((a, np.outer(basis[:, n], np.conj(basis[:, n])))
                                         for n, a in enumerate(eigenvalues)))


def observable_from_hermitian(h, degeneracy_tol=DEFAULT_TOLERANCES.degeneracy):
    """
    Spectral projections of a Hermitian matrix. Sorted eigenvalues are clustered greedily: an eigenvalue
    joins the current cluster when it lies within degeneracy_tol of the previous one.
    :param h: Hermitian matrix
    :param degeneracy_tol: eigenvalues closer than this are merged into one outcome
    :return: DiscreteObservable
    """
    eigenvalues, eigenvectors = hermitian_eig(h)
    clusters = [[0]]
    for idx in range(1, len(eigenvalues)):
        if eigenvalues[idx] - eigenvalues[idx - 1] <= degeneracy_tol:
            clusters[-1].append(idx)
        else:
            clusters.append([idx])

    outcomes = []
    for cluster in clusters:
        vectors = eigenvectors[:, cluster]
        outcomes.append((np.mean(eigenvalues[cluster]), vectors @ dagger(vectors)))
    logger.debug("spectral decomposition: %d eigenvalues in %d outcomes", len(eigenvalues), len(outcomes))
    return DiscreteObservable(eigenvectors.shape[0], tuple(outcomes))


def checked_probability(value, band=DEFAULT_TOLERANCES.probability_band):
    """
    Clamp a computed probability to [0, 1]; values outside [-band, 1 + band] signal a broken model
    """
    value = float(np.real(value))
    if value < -band or value > 1 + band:
        raise NumericalConsistencyError(f"probability {value:.15g} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def born_probability(obs, a, rho):
    """
    Pr{A = a || rho} = Tr[E(a) rho]
    :param obs: DiscreteObservable
    :param a: real number, any value that is not an eigenvalue has probability 0
    :param rho: DensityOperator (or matrix)
    :return: probability in [0, 1]
    """
    rho = as_density(rho)
    if rho.dim != obs.dim:
        raise InvalidArgumentError(f"state of dimension {rho.dim} for an observable of dimension {obs.dim}")
    if not obs.has_outcome(a):
        return 0.0
    return checked_probability(np.trace(obs.projector(a) @ rho.matrix))
