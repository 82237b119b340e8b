import logging

import numpy as np
import scipy.linalg as la

from src.errors import InvalidArgumentError, UnsupportedDegenerateError
from src.linalg import (as_matrix, complete_to_unitary, dagger, is_unitary, random_isometry, random_unitary,
                        tensor)
from src.quantum import DensityOperator, DiscreteObservable
from .dilation import probe_consistency
from .measurement_model import MeasurementModel

logger = logging.getLogger(__name__)

MIN_BIAS_RESIDUAL = 0.1


def _check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InvalidArgumentError(f"seed must be a non-negative integer, got {seed!r}")


def basis_vector(dim, index):
    e = np.zeros(dim, dtype=np.complex128)
    e[index] = 1.0
    return e


def sector_sizes(dim_a, outcome_count):
    """
    Split the apparatus space into one block per outcome, sizes as equal as possible,
    the remainder going to the first blocks
    """
    if dim_a < outcome_count:
        raise InvalidArgumentError(f"apparatus dimension {dim_a} is smaller than the {outcome_count} outcomes")
    base, remainder = divmod(dim_a, outcome_count)
    return [base + (1 if idx < remainder else 0) for idx in range(outcome_count)]


def sector_projectors(dim_a, sizes):
    projectors, start = [], 0
    for size in sizes:
        p = np.zeros((dim_a, dim_a), dtype=np.complex128)
        p[start:start + size, start:start + size] = np.eye(size)
        projectors.append(p)
        start += size
    return projectors


def _pointer_basis(dim_a, pointer_basis):
    if pointer_basis is None:
        return np.eye(dim_a, dtype=np.complex128)
    if isinstance(pointer_basis, (int, np.integer)):
        _check_seed(pointer_basis)
        return random_unitary(dim_a, np.random.default_rng(pointer_basis))
    basis = as_matrix(pointer_basis, "pointer basis")
    if basis.shape[0] != dim_a or not is_unitary(basis):
        raise InvalidArgumentError("explicit pointer basis must be a unitary on the apparatus space")
    return basis


def von_neumann_model(observable, dim_a, pointer_basis=None):
    """
    Model with U (phi_n (x) xi) = phi_n (x) xi_n, xi the first apparatus basis vector.
    U = sum_n |phi_n><phi_n| (x) W_n with W_n any unitary sending xi to xi_n.
    :param observable: nondegenerate DiscreteObservable
    :param dim_a: apparatus dimension, at least the number of outcomes
    :param pointer_basis: None (standard basis), an integer seed (Haar-random basis) or a unitary
        whose columns are xi_0, xi_1, ...
    :return: MeasurementModel with probe M = sum_n a_n |xi_n><xi_n|; the unused pointer vectors are given
        to the first outcome
    """
    if not observable.is_nondegenerate():
        raise UnsupportedDegenerateError("the von Neumann construction needs a nondegenerate observable")
    outcome_count = len(observable.outcomes)
    if dim_a < outcome_count:
        raise InvalidArgumentError(f"apparatus dimension {dim_a} is smaller than the {outcome_count} outcomes")
    logger.info("-- VON NEUMANN MODEL (dim_s=%d, dim_a=%d) --", observable.dim, dim_a)
    pointers = _pointer_basis(dim_a, pointer_basis)

    dim_s = observable.dim
    unitary = np.zeros((dim_s * dim_a, dim_s * dim_a), dtype=np.complex128)
    probe_projectors = []
    for n, (a, projector) in enumerate(observable.outcomes):
        shift = complete_to_unitary(pointers[:, n])
        unitary += tensor(projector, shift)
        probe_projectors.append(np.outer(pointers[:, n], np.conj(pointers[:, n])))
    for n in range(outcome_count, dim_a):
        probe_projectors[0] = probe_projectors[0] + np.outer(pointers[:, n], np.conj(pointers[:, n]))

    probe = DiscreteObservable(dim_a, tuple(zip(observable.eigenvalues, probe_projectors)))
    xi = basis_vector(dim_a, 0)
    sigma = DensityOperator(np.outer(xi, np.conj(xi)))
    return MeasurementModel(dim_s, dim_a, observable, sigma, unitary, probe)


def random_faithful_model(observable, dim_a, seed, sigma_rank=1):
    """
    Random model whose probe reproduces the Born statistics of `observable` by construction.
    The apparatus space is split into one sector per outcome; the apparatus starts on the first
    `sigma_rank` basis vectors with random weights, and for each outcome a random isometry sends
    E(a)H_S (x) span{apparatus support} into H_S (x) sector(a). The isometry is completed to a unitary
    on the orthogonal complement. Degenerate observables are supported.
    :param observable: DiscreteObservable
    :param dim_a: apparatus dimension, at least the number of outcomes
    :param seed: seed, equal seeds give bit-identical models
    :param sigma_rank: rank of the apparatus state, must fit rank(E(a)) * sigma_rank <= dim_s * |sector(a)|
    :return: MeasurementModel with probe E^M(a) = projector onto sector(a)
    """
    _check_seed(seed)
    rng = np.random.default_rng(seed)
    dim_s = observable.dim
    sizes = sector_sizes(dim_a, len(observable.outcomes))
    if not 1 <= sigma_rank <= dim_a:
        raise InvalidArgumentError(f"apparatus state rank must lie in [1, {dim_a}], got {sigma_rank}")
    logger.info("-- RANDOM FAITHFUL MODEL (dim_s=%d, dim_a=%d, seed=%s) --", dim_s, dim_a, seed)

    inputs, outputs, start = [], [], 0
    for (a, projector), size in zip(observable.outcomes, sizes):
        eigenspace = la.orth(projector)
        domain = [np.kron(eigenspace[:, i], basis_vector(dim_a, k))
                  for i in range(eigenspace.shape[1]) for k in range(sigma_rank)]
        target_dim = dim_s * size
        if len(domain) > target_dim:
            raise InvalidArgumentError(f"sector of outcome {a} is too small for an apparatus state of rank "
                                       f"{sigma_rank}")
        isometry = random_isometry(target_dim, len(domain), rng)
        # target basis: e_i (x) e_j for j in the sector
        target = np.zeros((dim_s * dim_a, target_dim), dtype=np.complex128)
        for i in range(dim_s):
            for j in range(size):
                target[i * dim_a + start + j, i * size + j] = 1.0
        inputs.append(np.column_stack(domain))
        outputs.append(target @ isometry)
        start += size

    unitary = complete_to_unitary(np.hstack(outputs), rng) @ dagger(complete_to_unitary(np.hstack(inputs)))

    if sigma_rank == 1:
        weights = np.array([1.0])
    else:
        weights = rng.dirichlet(np.ones(sigma_rank))
    sigma = np.zeros((dim_a, dim_a), dtype=np.complex128)
    sigma[:sigma_rank, :sigma_rank] = np.diag(weights / np.sum(weights))
    probe = DiscreteObservable(dim_a, tuple(zip(observable.eigenvalues, sector_projectors(dim_a, sizes))))
    return MeasurementModel(dim_s, dim_a, observable, DensityOperator(sigma), unitary, probe)


def random_biased_model(observable, dim_a, seed, swap=None, sigma_rank=1):
    """
    Faithful model whose probe projectors of two outcomes are exchanged, so that the probe no longer
    reproduces the statistics of the observable.
    :param swap: pair of outcome indices to exchange, drawn from the seed when None
    :param sigma_rank: rank of the apparatus state, as in random_faithful_model
    :return: MeasurementModel failing probe_consistency with residual >= 0.1
    """
    _check_seed(seed)
    outcome_count = len(observable.outcomes)
    if outcome_count < 2:
        raise InvalidArgumentError("a biased probe needs at least two outcomes")
    faithful = random_faithful_model(observable, dim_a, seed, sigma_rank)
    if swap is None:
        swap = tuple(int(idx) for idx in np.random.default_rng([seed, 1]).choice(outcome_count, 2, replace=False))
    first, second = swap
    if first == second or not (0 <= first < outcome_count and 0 <= second < outcome_count):
        raise InvalidArgumentError(f"swap needs two distinct outcome indices, got {swap}")

    projectors = [projector for _, projector in faithful.probe.outcomes]
    projectors[first], projectors[second] = projectors[second], projectors[first]
    biased = faithful.with_probe(DiscreteObservable(dim_a, tuple(zip(observable.eigenvalues, projectors))))

    report = probe_consistency(biased)
    if report.worst_residual < MIN_BIAS_RESIDUAL:
        raise InvalidArgumentError(f"bias too weak: residual {report.worst_residual:.3e}")
    logger.info("-- RANDOM BIASED MODEL (swapped outcomes %d and %d) --", first, second)
    return biased
