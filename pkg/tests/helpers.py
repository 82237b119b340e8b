import numpy as np

from src.linalg import random_unitary
from src.quantum import DiscreteObservable, observable_from_hermitian

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)


def degenerate_observable():
    """
    diag(1, 1, -1): a rank-2 and a rank-1 outcome on a qutrit
    """
    basis = np.eye(3, dtype=np.complex128)
    return DiscreteObservable(3, ((1.0, basis[:, :2] @ basis[:, :2].T), (-1.0, np.outer(basis[:, 2], basis[:, 2]))))


def random_observable(dim, rng, degenerate=False):
    """
    Observable with random eigenbasis; when degenerate the two lowest eigenvalues coincide
    """
    eigenvalues = np.sort(rng.uniform(-2, 2, dim))
    if degenerate and dim > 2:
        eigenvalues[1] = eigenvalues[0]
    basis = random_unitary(dim, rng)
    return observable_from_hermitian(basis @ np.diag(eigenvalues) @ basis.conj().T)
