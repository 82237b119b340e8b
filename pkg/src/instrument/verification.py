import logging

import numpy as np
from tqdm import tqdm

from src.config import DEFAULT_TOLERANCES
from src.linalg import matrix_unit, operator_norm, random_matrix, trace_norm
from src.superop import apply, apply_by_decomposition, dual
from .check_type import CheckType
from .report import VerificationReport

logger = logging.getLogger(__name__)


def _trace_class_samples(dim, trials, seed):
    """
    Matrix units followed by random non-Hermitian operators of unit trace norm.
    Each trial has its own generator spawned from the master seed.
    """
    samples = [matrix_unit(dim, i, j) for i in range(dim) for j in range(dim)]
    for child in np.random.SeedSequence(seed).spawn(trials):
        m = random_matrix(dim, np.random.default_rng(child))
        samples.append(m / trace_norm(m))
    return samples


def verify_theorem1(ins, trials=50, seed=0, tol=DEFAULT_TOLERANCES.verification, progress=False):
    """
    Check T_a(rho) = T(E rho) = T(rho E) = T(E rho E) on arbitrary trace class operators.
    T_a is evaluated through the four-density-operator decomposition, so only its action on
    density operators is used. Residuals are trace norms on operators of unit trace norm.
    :param ins: Instrument
    :param trials: number of random operators added to the matrix units
    :param seed: master seed
    :param tol: pass threshold
    :param progress: show a tqdm progress bar
    :return: VerificationReport
    """
    report = VerificationReport("reduction_forms")
    samples = _trace_class_samples(ins.dim, trials, seed)
    residuals = {a: {CheckType.LEFT_FORM: 0.0, CheckType.RIGHT_FORM: 0.0, CheckType.SANDWICH_FORM: 0.0}
                 for a in ins.outcomes}
    for m in tqdm(samples, desc="reduction forms", disable=not progress):
        for a in ins.outcomes:
            projector = ins.observable.projector(a)
            component = apply_by_decomposition(ins.components[a], m)
            forms = {CheckType.LEFT_FORM: apply(ins.total, projector @ m),
                     CheckType.RIGHT_FORM: apply(ins.total, m @ projector),
                     CheckType.SANDWICH_FORM: apply(ins.total, projector @ m @ projector)}
            for check, value in forms.items():
                residuals[a][check] = max(residuals[a][check], trace_norm(component - value))

    for a, by_check in residuals.items():
        for check, residual in by_check.items():
            report.add(check, a, residual, tol)
    logger.debug("reduction forms on %d operators: worst residual %.3e", len(samples), report.max_residual())
    return report


def verify_dual_lemma(ins, samples=50, seed=0, tol=DEFAULT_TOLERANCES.verification):
    """
    Heisenberg-picture hypotheses T*(1) = 1, T_a*(1) = E(a) and the conclusion
    T_a*(X) = E T*(X) = T*(X) E = E T*(X) E on random bounded X of unit operator norm.
    Residuals are operator norms.
    :return: VerificationReport
    """
    report = VerificationReport("dual_forms")
    identity = np.eye(ins.dim, dtype=np.complex128)
    total_dual = dual(ins.total)
    component_duals = {a: dual(ins.components[a]) for a in ins.outcomes}

    report.add(CheckType.UNITALITY, None, operator_norm(apply(total_dual, identity) - identity), tol)
    for a in ins.outcomes:
        projector = ins.observable.projector(a)
        report.add(CheckType.EFFECT, a, operator_norm(apply(component_duals[a], identity) - projector), tol)

    rng = np.random.default_rng(seed)
    bounded = []
    for _ in range(samples):
        x = random_matrix(ins.dim, rng)
        bounded.append(x / operator_norm(x))

    for a in ins.outcomes:
        projector = ins.observable.projector(a)
        left, right, sandwich = 0.0, 0.0, 0.0
        for x in bounded:
            heisenberg = apply(total_dual, x)
            component = apply(component_duals[a], x)
            left = max(left, operator_norm(component - projector @ heisenberg))
            right = max(right, operator_norm(component - heisenberg @ projector))
            sandwich = max(sandwich, operator_norm(component - projector @ heisenberg @ projector))
        report.add(CheckType.DUAL_LEFT, a, left, tol)
        report.add(CheckType.DUAL_RIGHT, a, right, tol)
        report.add(CheckType.DUAL_SANDWICH, a, sandwich, tol)
    return report
