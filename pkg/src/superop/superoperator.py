"""
Linear maps of operators on a d-dimensional space, represented as d^2 x d^2 matrices acting on
column-stacked operators: vec(A X B) = (B^T (x) A) vec(X).
"""
import numbers
from dataclasses import dataclass

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError
from src.linalg import as_matrix, is_psd, matrix_unit, max_abs, random_pure_state


def vec(m):
    return np.asarray(m).flatten(order="F")


def unvec(v, dim):
    return np.asarray(v).reshape((dim, dim), order="F")


def left_multiplication(a):
    """
    rep of X -> A X
    """
    return np.kron(np.eye(a.shape[0]), a)


def right_multiplication(b):
    """
    rep of X -> X B
    """
    return np.kron(np.transpose(b), np.eye(b.shape[0]))


def transpose_permutation(dim):
    """
    Permutation P with vec(X^T) = P vec(X)
    """
    p = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            p[j + i * dim, i + j * dim] = 1.0
    return p


@dataclass(frozen=True, eq=False)
class Superoperator:
    """
    Linear transformation of the trace class operators on a space of dimension `dim`
    :param dim: dimension d of the underlying Hilbert space
    :param rep: d^2 x d^2 matrix on column-stacked operators
    """
    dim: int
    rep: np.ndarray

    def __post_init__(self):
        rep = np.array(self.rep, dtype=np.complex128)
        if rep.shape != (self.dim ** 2, self.dim ** 2):
            raise InvalidArgumentError(f"a superoperator on dimension {self.dim} needs a "
                                       f"{self.dim ** 2} x {self.dim ** 2} representation, got {rep.shape}")
        if not np.all(np.isfinite(rep)):
            raise InvalidArgumentError("superoperator has NaN or infinite entries")
        rep.setflags(write=False)
        object.__setattr__(self, "rep", rep)

    # constructors

    @classmethod
    def identity(cls, dim):
        return cls(dim, np.eye(dim * dim))

    @classmethod
    def zero(cls, dim):
        return cls(dim, np.zeros((dim * dim, dim * dim)))

    @classmethod
    def from_kraus(cls, kraus_operators):
        """
        X -> sum_k K_k X K_k^dagger
        """
        kraus_operators = [as_matrix(k, "Kraus operator") for k in kraus_operators]
        dim = kraus_operators[0].shape[0]
        return cls(dim, sum(np.kron(np.conj(k), k) for k in kraus_operators))

    @classmethod
    def conjugation(cls, u):
        """
        X -> U X U^dagger
        """
        return cls.from_kraus([u])

    @classmethod
    def from_function(cls, func, dim):
        """
        Tabulate a linear function of matrices on the matrix units |i><j|
        :param func: callable taking and returning a dim x dim matrix, assumed linear
        """
        rep = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
        for i in range(dim):
            for j in range(dim):
                rep[:, i + j * dim] = vec(func(matrix_unit(dim, i, j)))
        return cls(dim, rep)

    @classmethod
    def transpose_map(cls, dim):
        return cls(dim, transpose_permutation(dim))

    # action

    def __call__(self, m):
        return apply(self, m)

    def __add__(self, other):
        self._check_same_dim(other)
        return Superoperator(self.dim, self.rep + other.rep)

    def __sub__(self, other):
        self._check_same_dim(other)
        return Superoperator(self.dim, self.rep - other.rep)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            raise InvalidArgumentError(f"a superoperator can only be scaled by a number, got {type(scalar).__name__}; "
                                       f"use after() for composition")
        return Superoperator(self.dim, scalar * self.rep)

    __rmul__ = __mul__

    def after(self, other):
        """
        Composition self o other
        """
        self._check_same_dim(other)
        return Superoperator(self.dim, self.rep @ other.rep)

    def after_left_multiplication(self, a):
        """
        X -> self(A X)
        """
        return Superoperator(self.dim, self.rep @ left_multiplication(as_matrix(a)))

    def after_right_multiplication(self, b):
        """
        X -> self(X B)
        """
        return Superoperator(self.dim, self.rep @ right_multiplication(as_matrix(b)))

    def after_sandwich(self, p):
        """
        X -> self(P X P)
        """
        p = as_matrix(p)
        return Superoperator(self.dim, self.rep @ np.kron(np.transpose(p), p))

    def distance(self, other):
        """
        ||rep_1 - rep_2||_max
        """
        self._check_same_dim(other)
        return max_abs(self.rep - other.rep)

    def close_to(self, other, tol=DEFAULT_TOLERANCES.verification):
        return self.distance(other) <= tol

    def _check_same_dim(self, other):
        if self.dim != other.dim:
            raise InvalidArgumentError(f"superoperators on dimensions {self.dim} and {other.dim}")


def apply(s, m):
    """
    :param s: Superoperator
    :param m: any dim x dim matrix (not only positive ones)
    :return: s(m)
    """
    m = as_matrix(np.asarray(m), "operand")
    if m.shape[0] != s.dim:
        raise InvalidArgumentError(f"operand of dimension {m.shape[0]} for a map on dimension {s.dim}")
    return unvec(s.rep @ vec(m), s.dim)


def dual(s):
    """
    Heisenberg-picture map T* with Tr[X T(rho)] = Tr[T*(X) rho]
    """
    p = transpose_permutation(s.dim)
    return Superoperator(s.dim, p @ np.transpose(s.rep) @ p)


def trace_of_map(s, rho):
    """
    Tr[s(rho)], returned as a float when the imaginary part is negligible
    """
    value = complex(np.trace(apply(s, rho)))
    if abs(value.imag) <= DEFAULT_TOLERANCES.hermiticity * max(1.0, abs(value)):
        return value.real
    return value


def is_positive_sampled(s, trials, seed, tol=DEFAULT_TOLERANCES.psd):
    """
    Necessary check of positivity: s(|psi><psi|) must be positive for random pure psi.
    Non-Hermitian images count as failures.
    :param trials: number of random pure states, at least 1
    :param seed: seed of the generator, results are deterministic for a fixed seed
    """
    if trials < 1:
        raise InvalidArgumentError("at least one trial is needed")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        psi = random_pure_state(s.dim, rng)
        if not is_psd(apply(s, np.outer(psi, np.conj(psi))), tol):
            return False
    return True


def is_trace_preserving(s, tol=DEFAULT_TOLERANCES.verification):
    """
    Tr[s(X)] = Tr[X] for all X, i.e. s*(1) = 1
    """
    return max_abs(apply(dual(s), np.eye(s.dim)) - np.eye(s.dim)) <= tol

