import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError, NumericalConsistencyError, ZeroProbabilityOutcomeError
from src.instrument import outcome_probability, reduce
from src.models import instrument_of
from src.quantum import DiscreteObservable, as_density, born_probability, checked_probability, snap_eigenvalue
from src.superop import apply

logger = logging.getLogger(__name__)

JOINT_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """
    Joint statistics of a measurement of `first_observable` followed by one of `second_observable`.
    :param table: DataFrame indexed by the first outcomes, one column per second outcome
    """
    first_observable: DiscreteObservable
    second_observable: DiscreteObservable
    table: pd.DataFrame

    def probability(self, a, x):
        a, x = snap_eigenvalue(a), snap_eigenvalue(x)
        if a not in self.table.index or x not in self.table.columns:
            return 0.0
        return float(self.table.loc[a, x])

    def first_marginal(self):
        return self.table.sum(axis=1)

    def second_marginal(self):
        return self.table.sum(axis=0)

    def to_records(self):
        return [{"first": float(a), "second": float(x), "probability": float(self.table.loc[a, x])}
                for a in self.table.index for x in self.table.columns]


def joint_from_instrument(ins, second, rho, probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    Pr{A = a, X = x} = Tr[E^X(x) T_a(rho)], defined also for first outcomes of probability zero.
    Where P(a) is above the floor the value is checked against the product P(a) Tr[E^X(x) rho_a].
    :param ins: Instrument of the first measurement
    :param second: DiscreteObservable measured afterwards
    :param rho: input DensityOperator
    :return: JointDistribution
    """
    rho = as_density(rho)
    if second.dim != ins.dim or rho.dim != ins.dim:
        raise InvalidArgumentError("instrument, second observable and state act on different dimensions")
    table = pd.DataFrame(0.0, index=pd.Index(ins.outcomes, name="first"),
                         columns=pd.Index(second.eigenvalues, name="second"))
    for a in ins.outcomes:
        after = apply(ins.components[a], rho.matrix)
        for x, projector in second.outcomes:
            table.loc[a, x] = checked_probability(np.trace(projector @ after))

    for a in ins.outcomes:
        probability = outcome_probability(ins, a, rho)
        if probability <= probability_floor:
            continue
        reduced = reduce(ins, a, rho, probability_floor)
        for x in second.eigenvalues:
            product = probability * born_probability(second, x, reduced)
            if abs(product - table.loc[a, x]) > JOINT_TOLERANCE:
                raise NumericalConsistencyError(f"joint probability of ({a}, {x}) differs between the instrument "
                                                f"and product forms by {abs(product - table.loc[a, x]):.3e}")
    return JointDistribution(ins.observable, second, table)


def joint_distribution(model, second, rho, tol=DEFAULT_TOLERANCES.verification,
                       probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    Joint distribution of the outcome of `model` and of a subsequent measurement of `second`
    :param model: MeasurementModel, refused with NotAMeasurementError when unfaithful
    :return: JointDistribution whose first marginal is the Born distribution of the model's observable
    """
    rho = as_density(rho)
    if rho.dim != model.dim_s:
        raise InvalidArgumentError(f"state of dimension {rho.dim} for an object of dimension {model.dim_s}")
    logger.info("-- JOINT DISTRIBUTION (%d x %d outcomes) --", len(model.observable.outcomes),
                len(second.outcomes))
    jd = joint_from_instrument(instrument_of(model, tol), second, rho, probability_floor)
    marginal = jd.first_marginal()
    for a in model.observable.eigenvalues:
        residual = abs(marginal[a] - born_probability(model.observable, a, rho))
        if residual > JOINT_TOLERANCE:
            raise NumericalConsistencyError(f"first marginal at {a} is off the Born rule by {residual:.3e}")
    return jd


def conditional_distribution(jd, a, probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    Pr{X = x | A = a} = Pr{A = a, X = x} / Pr{A = a}
    :return: dict second outcome -> probability
    """
    a = snap_eigenvalue(a)
    if a not in jd.table.index:
        raise ZeroProbabilityOutcomeError(a, 0.0, probability_floor)
    row = jd.table.loc[a]
    marginal = float(row.sum())
    if marginal <= probability_floor:
        raise ZeroProbabilityOutcomeError(a, marginal, probability_floor)
    return {float(x): float(p) / marginal for x, p in row.items()}
