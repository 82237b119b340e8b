from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from src.linalg import as_matrix, dagger
from src.quantum import DensityOperator
from .superoperator import apply

# signs of the four parts: m = l1 s1 - l2 s2 + i l3 s3 - i l4 s4
PART_COEFFICIENTS = (1.0, -1.0, 1j, -1j)


@dataclass(frozen=True, eq=False)
class TraceClassDecomposition:
    """
    Representation of an arbitrary operator by four density operators and four nonnegative weights.
    Parts with zero weight carry the maximally mixed state.
    """
    lambdas: tuple
    parts: tuple

    def reassemble(self):
        return sum(c * lam * part.matrix for c, lam, part in zip(PART_COEFFICIENTS, self.lambdas, self.parts))


def _positive_negative(h, dim):
    """
    Split a Hermitian matrix into its positive and negative parts, each as (weight, DensityOperator)
    """
    eigenvalues, eigenvectors = la.eigh(h)
    cutoff = 1e-14 * max(1.0, float(np.max(np.abs(eigenvalues))))
    result = []
    for sign in (1.0, -1.0):
        selected = sign * eigenvalues > cutoff
        weights = sign * eigenvalues[selected]
        vectors = eigenvectors[:, selected]
        lam = float(np.sum(weights))
        if lam > 0:
            part = (vectors * weights) @ dagger(vectors)
            result.append((lam, DensityOperator.normalized((part + dagger(part)) / 2)))
        else:
            result.append((0.0, DensityOperator.maximally_mixed(dim)))
    return result


def decompose_trace_class(m):
    """
    m = H + iK with H, K Hermitian, and each of H, K split into positive and negative parts
    :param m: any square matrix
    :return: TraceClassDecomposition
    """
    m = as_matrix(m)
    dim = m.shape[0]
    hermitian_part = (m + dagger(m)) / 2
    anti_hermitian_part = (m - dagger(m)) / 2j
    (l1, s1), (l2, s2) = _positive_negative(hermitian_part, dim)
    (l3, s3), (l4, s4) = _positive_negative(anti_hermitian_part, dim)
    return TraceClassDecomposition((l1, l2, l3, l4), (s1, s2, s3, s4))


def apply_by_decomposition(s, m):
    """
    Action of a map on an arbitrary operator through its action on density operators only:
    s(m) = l1 s(s1) - l2 s(s2) + i l3 s(s3) - i l4 s(s4)
    """
    decomposition = decompose_trace_class(m)
    return sum(c * lam * apply(s, part.matrix)
               for c, lam, part in zip(PART_COEFFICIENTS, decomposition.lambdas, decomposition.parts))
