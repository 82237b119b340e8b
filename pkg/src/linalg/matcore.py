"""
Dense complex linear algebra kernel.
Composite spaces are always ordered object first: H_S (x) H_A, and a composite index (i_S, i_A)
is flattened to i_S * dim_A + i_A, which is the Kronecker convention of numpy.kron.
"""
import numpy as np
import scipy.linalg as la

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError


def as_matrix(m, name="matrix"):
    """
    Validate and convert to a square finite complex128 array
    :param m: array-like
    :param name: used in error messages
    :return: np.ndarray of shape (d, d)
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InvalidArgumentError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError(f"{name} has NaN or infinite entries")
    return m


def dagger(m):
    return np.conj(np.transpose(m))


def matrix_unit(dim, i, j):
    """
    :return: |i><j| on a space of dimension dim
    """
    e = np.zeros((dim, dim), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def tensor(a, b):
    """
    Kronecker product a (x) b, block (i, j) of the result is a[i, j] * b
    """
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace_apparatus(m, dim_s, dim_a):
    """
    Trace out the second (apparatus) factor of an operator on H_S (x) H_A
    result[i, j] = sum_k m[(i, k), (j, k)]
    :param m: operator of dimension dim_s * dim_a
    :param dim_s: dimension of the object
    :param dim_a: dimension of the apparatus
    :return: operator on H_S
    """
    m = as_matrix(m)
    if dim_s < 1 or dim_a < 1 or m.shape[0] != dim_s * dim_a:
        raise InvalidArgumentError(f"cannot trace a {m.shape[0]}-dimensional operator "
                                   f"as {dim_s} x {dim_a}")
    return np.einsum("ikjk->ij", m.reshape(dim_s, dim_a, dim_s, dim_a))


def hermiticity_residual(m):
    return la.norm(m - dagger(m))


def is_hermitian(m, tol=DEFAULT_TOLERANCES.hermiticity):
    """
    :param tol: relative tolerance, the bound is tol * ||m|| (Frobenius)
    """
    return hermiticity_residual(m) <= tol * la.norm(m)


def hermitian_eig(m, tol=DEFAULT_TOLERANCES.hermiticity):
    """
    Eigendecomposition of a Hermitian matrix
    :param m: Hermitian matrix
    :param tol: relative hermiticity tolerance
    :return: (eigenvalues ascending, eigenvectors as orthonormal columns)
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise InvalidArgumentError(f"matrix is not Hermitian (residual {hermiticity_residual(m):.3e})")
    eigenvalues, eigenvectors = la.eigh((m + dagger(m)) / 2)
    return eigenvalues, eigenvectors


def trace_norm(m):
    """
    Sum of singular values
    """
    return float(np.sum(la.svdvals(as_matrix(m))))


def operator_norm(m):
    """
    Largest singular value
    """
    return float(la.norm(np.asarray(m, dtype=np.complex128), 2))


def max_abs(m):
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def trace_distance(a, b):
    return 0.5 * trace_norm(np.asarray(a) - np.asarray(b))


def min_eigenvalue(m):
    """
    Smallest eigenvalue of the Hermitian part of m
    """
    m = as_matrix(m)
    return float(la.eigvalsh((m + dagger(m)) / 2)[0])


def is_psd(m, tol=DEFAULT_TOLERANCES.psd):
    """
    :return: True iff m is Hermitian (within hermiticity tolerance) and its smallest eigenvalue is >= -tol
    """
    m = as_matrix(m)
    if not is_hermitian(m):
        return False
    return min_eigenvalue(m) >= -tol


def is_unitary(u, tol=DEFAULT_TOLERANCES.hermiticity):
    u = as_matrix(u, "unitary")
    return max_abs(dagger(u) @ u - np.eye(u.shape[0])) <= tol


def random_unitary(dim, rng):
    """
    Haar-random unitary: QR decomposition of a Ginibre matrix with the phases of R removed
    :param rng: np.random.Generator
    """
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = la.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_isometry(rows, cols, rng):
    """
    :return: rows x cols matrix with orthonormal columns
    """
    if cols > rows:
        raise InvalidArgumentError(f"no isometry from dimension {cols} into dimension {rows}")
    return random_unitary(rows, rng)[:, :cols]


def random_pure_state(dim, rng):
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / la.norm(psi)


def random_density(dim, rng, rank=None):
    """
    Random density matrix of the given rank (full rank by default)
    """
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ dagger(g)
    rho = (rho + dagger(rho)) / 2
    return rho / np.real(np.trace(rho))


def random_hermitian(dim, rng):
    h = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (h + dagger(h)) / 2


def random_matrix(dim, rng):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def complete_to_unitary(columns, rng=None):
    """
    Extend a set of orthonormal columns to a unitary matrix.
    The complement basis comes from scipy's null_space; with a generator it is further rotated
    by a random unitary so that seeded models are generic but reproducible.
    :param columns: n x k matrix with orthonormal columns
    :param rng: optional np.random.Generator
    :return: n x n unitary whose first k columns are `columns`
    """
    columns = np.asarray(columns, dtype=np.complex128)
    if columns.ndim == 1:
        columns = columns.reshape(-1, 1)
    n, k = columns.shape
    if k == n:
        return columns.copy()
    complement = la.null_space(dagger(columns))
    if complement.shape[1] != n - k:
        raise InvalidArgumentError("columns are not linearly independent")
    if rng is not None:
        complement = complement @ random_unitary(n - k, rng)
    return np.hstack([columns, complement])
