import logging
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from src.config import DEFAULT_TOLERANCES, SPANNING_RANDOM_STATES, SPANNING_SEED
from src.errors import InvalidArgumentError, NotAMeasurementError, ZeroProbabilityOutcomeError
from src.linalg import matrix_unit, max_abs, random_density
from src.quantum import DensityOperator, as_density, checked_probability, snap_eigenvalue
from src.superop import Superoperator, apply, choi
from .check_type import CheckType
from .report import VerificationReport

logger = logging.getLogger(__name__)


def spanning_set(dim, count=SPANNING_RANDOM_STATES, seed=SPANNING_SEED):
    """
    Test operators for linear identities: the dim^2 matrix units, then `count` random density operators
    """
    operators = [matrix_unit(dim, i, j) for i in range(dim) for j in range(dim)]
    rng = np.random.default_rng(seed)
    operators += [random_density(dim, rng) for _ in range(count)]
    return operators


@dataclass(frozen=True, eq=False)
class Instrument:
    """
    Operational distribution {T_a} of an apparatus measuring `observable`, and its operation T.
    Components are keyed by eigenvalue; T_a is the zero map for any other real a.
    Construction does not validate, call validate() for the invariant report.
    """
    observable: object
    components: dict
    total: Superoperator

    def __post_init__(self):
        snapped = {snap_eigenvalue(a): component for a, component in self.components.items()}
        if len(snapped) != len(self.components):
            raise InvalidArgumentError("two components are keyed by the same eigenvalue")
        for a, component in snapped.items():
            if not self.observable.has_outcome(a):
                raise InvalidArgumentError(f"component for {a}, which is not an eigenvalue of the observable")
            if component.dim != self.observable.dim:
                raise InvalidArgumentError(f"component for {a} acts on dimension {component.dim}")
        if self.total.dim != self.observable.dim:
            raise InvalidArgumentError(f"operation acts on dimension {self.total.dim}")
        ordered = {a: snapped.get(a, Superoperator.zero(self.dim)) for a in self.observable.eigenvalues}
        object.__setattr__(self, "components", MappingProxyType(ordered))

    @property
    def dim(self):
        return self.observable.dim

    @property
    def outcomes(self):
        return list(self.components.keys())

    def component(self, a):
        return self.components.get(snap_eigenvalue(a), Superoperator.zero(self.dim))

    def with_component(self, a, component):
        components = dict(self.components)
        components[snap_eigenvalue(a)] = component
        return Instrument(self.observable, components, self.total)

    def with_total(self, total):
        return Instrument(self.observable, dict(self.components), total)

    def validate(self, tol=DEFAULT_TOLERANCES.verification):
        """
        Invariant report: sum_a T_a = T, Tr[T(rho)] = Tr[rho], Tr[T_a(rho)] = Tr[E(a) rho], each T_a CP
        :param tol: pass threshold of every record
        :return: VerificationReport
        """
        report = VerificationReport("instrument_invariants")
        summed = sum((self.components[a] for a in self.outcomes), Superoperator.zero(self.dim))
        report.add(CheckType.COMPLETENESS, None, self.total.distance(summed), tol)

        test_operators = spanning_set(self.dim)
        residual = max(abs(np.trace(apply(self.total, x)) - np.trace(x)) for x in test_operators)
        report.add(CheckType.TRACE_PRESERVATION, None, residual, tol)

        for a in self.outcomes:
            projector = self.observable.projector(a)
            residual = max(abs(np.trace(apply(self.components[a], x)) - np.trace(projector @ x))
                           for x in test_operators)
            report.add(CheckType.OUTCOME_TRACE, a, residual, tol)
            report.add(CheckType.COMPLETE_POSITIVITY, a, max(0.0, -choi(self.components[a]).min_eigenvalue()), tol)
        return report


def luders_instrument(obs):
    """
    T_a(rho) = E(a) rho E(a), the instrument of the projection postulate
    """
    components = {a: Superoperator.from_kraus([projector]) for a, projector in obs.outcomes}
    total = sum(components.values(), Superoperator.zero(obs.dim))
    return Instrument(obs, components, total)


def _check_dims(ins, rho):
    rho = as_density(rho)
    if rho.dim != ins.dim:
        raise InvalidArgumentError(f"state of dimension {rho.dim} for an instrument on dimension {ins.dim}")
    return rho


def outcome_probability(ins, a, rho):
    """
    P(a) = Tr[T_a(rho)]
    """
    rho = _check_dims(ins, rho)
    a = snap_eigenvalue(a)
    if a not in ins.components:
        return 0.0
    return checked_probability(np.trace(apply(ins.components[a], rho.matrix)))


def reduce(ins, a, rho, probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    State reduction rho -> T_a(rho) / Tr[T_a(rho)]
    :param ins: Instrument
    :param a: outcome
    :param rho: DensityOperator
    :param probability_floor: outcomes with P(a) at or below the floor raise ZeroProbabilityOutcomeError
    :return: DensityOperator
    """
    probability = outcome_probability(ins, a, rho)
    if probability <= probability_floor:
        raise ZeroProbabilityOutcomeError(a, probability, probability_floor)
    unnormalized = apply(ins.component(a), as_density(rho).matrix)
    return DensityOperator(unnormalized / np.trace(unnormalized))


def reduce_or_mixed(ins, a, rho, probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    Same as reduce(), but a zero-probability outcome gives the maximally mixed state
    :return: (DensityOperator, defined) where defined is False for the maximally mixed placeholder
    """
    try:
        return reduce(ins, a, rho, probability_floor), True
    except ZeroProbabilityOutcomeError:
        return DensityOperator.maximally_mixed(ins.dim), False


def nonselective(ins, rho):
    """
    rho -> T(rho) = sum_a P(a) rho_a
    """
    rho = _check_dims(ins, rho)
    return DensityOperator(apply(ins.total, rho.matrix))


def operation_compatibility(t, obs, tol=DEFAULT_TOLERANCES.verification):
    """
    Conditions under which t can be the operation of an apparatus measuring obs, checked on a spanning set:
    Tr[t(E rho E)] = Tr[E rho] and t(E rho) = t(rho E) = t(E rho E) for every outcome.
    For a trace-preserving t the second condition is the one with content: t must not see the
    coherences between different eigenspaces.
    :return: VerificationReport
    """
    report = VerificationReport("operation_compatibility")
    test_operators = spanning_set(obs.dim)
    residual = max(abs(np.trace(apply(t, x)) - np.trace(x)) for x in test_operators)
    report.add(CheckType.TRACE_PRESERVATION, None, residual, tol)
    for a, projector in obs.outcomes:
        trace_residual, left_residual, right_residual = 0.0, 0.0, 0.0
        for x in test_operators:
            sandwich = apply(t, projector @ x @ projector)
            trace_residual = max(trace_residual, abs(np.trace(sandwich) - np.trace(projector @ x)))
            left_residual = max(left_residual, max_abs(apply(t, projector @ x) - sandwich))
            right_residual = max(right_residual, max_abs(apply(t, x @ projector) - sandwich))
        report.add(CheckType.OUTCOME_TRACE, a, trace_residual, tol)
        report.add(CheckType.LEFT_FORM, a, left_residual, tol)
        report.add(CheckType.RIGHT_FORM, a, right_residual, tol)
    return report


def raise_if_failed(report, condition):
    """
    Turn the worst failing record of a report into a NotAMeasurementError
    """
    if report.passed:
        return
    worst = report.worst()
    raise NotAMeasurementError(f"{condition} ({worst.check})", worst.outcome, worst.residual, worst.tolerance)


def instrument_from_operation(t, obs, tol=DEFAULT_TOLERANCES.verification):
    """
    The unique operational distribution of an operation: T_a(rho) = T(E(a) rho E(a))
    :param t: Superoperator, the operation of some apparatus measuring obs
    :param obs: DiscreteObservable
    :param tol: tolerance of the compatibility check and of the resulting invariants
    :return: Instrument
    """
    if t.dim != obs.dim:
        raise InvalidArgumentError(f"operation on dimension {t.dim} for an observable on dimension {obs.dim}")
    logger.info("-- INSTRUMENT FROM OPERATION (%d outcomes) --", len(obs.outcomes))
    raise_if_failed(operation_compatibility(t, obs, tol), "operation incompatible with the observable")
    components = {a: t.after_sandwich(projector) for a, projector in obs.outcomes}
    instrument = Instrument(obs, components, t)
    raise_if_failed(instrument.validate(tol), "instrument invariants")
    return instrument


def compare_instruments(first, second, tol=DEFAULT_TOLERANCES.verification):
    """
    Componentwise comparison of two instruments of the same observable
    :return: VerificationReport with one CROSS_ROUTE record per outcome
    """
    if first.observable.eigenvalues != second.observable.eigenvalues:
        raise InvalidArgumentError("instruments measure observables with different outcomes")
    report = VerificationReport("cross_route")
    report.add(CheckType.COMPLETENESS, None, first.total.distance(second.total), tol)
    for a in first.outcomes:
        report.add(CheckType.CROSS_ROUTE, a, first.component(a).distance(second.component(a)), tol)
    return report
