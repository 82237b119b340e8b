import logging

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError, MissingProbeError, NotAMeasurementError, ZeroProbabilityOutcomeError
from src.instrument import Instrument, operation_compatibility, raise_if_failed
from src.linalg import dagger, operator_norm, partial_trace_apparatus, tensor
from src.quantum import DensityOperator, as_density, checked_probability
from src.superop import Superoperator
from .measurement_model import ConsistencyReport

logger = logging.getLogger(__name__)

FORMS = ("sandwich", "left", "right")


def _reduced(model, composite):
    return partial_trace_apparatus(composite, model.dim_s, model.dim_a)


def operation_of(model):
    """
    Operation of the apparatus: T(rho) = Tr_A[U (rho (x) sigma) U^dagger]
    :param model: MeasurementModel
    :return: Superoperator on H_S
    """
    return Superoperator.from_function(lambda x: _reduced(model, model.evolve(x)), model.dim_s)


def probe_consistency(model, tol=DEFAULT_TOLERANCES.verification):
    """
    The probe reproduces the statistics of the observable for every input state iff
    F_a := Tr_A[U^dagger (1 (x) E^M(a)) U (1 (x) sigma)] equals E^A(a) for every outcome.
    :return: ConsistencyReport with operator-norm residuals
    """
    if model.probe is None:
        raise MissingProbeError("the model has no probe observable")
    identity_sigma = tensor(np.eye(model.dim_s), model.apparatus_state.matrix)
    residuals = {}
    for a, projector in model.observable.outcomes:
        effect = dagger(model.unitary) @ model.probe_projector(a) @ model.unitary
        f_a = _reduced(model, effect @ identity_sigma)
        residuals[a] = operator_norm(f_a - projector)
    report = ConsistencyReport.from_residuals(residuals, tol)
    logger.debug("probe consistency: worst residual %.3e at outcome %s", report.worst_residual,
                 report.worst_outcome)
    return report


def require_consistent_probe(model, tol):
    report = probe_consistency(model, tol)
    if not report.passed:
        raise NotAMeasurementError("probe statistics differ from the observable", report.worst_outcome,
                                   report.worst_residual, tol)
    return report


def _component(model, projector, form):
    if form == "sandwich":
        return lambda x: _reduced(model, model.evolve(projector @ x @ projector))
    if form == "left":
        return lambda x: _reduced(model, model.evolve(projector @ x))
    if form == "right":
        return lambda x: _reduced(model, model.evolve(x @ projector))
    raise InvalidArgumentError(f"unknown form {form!r}, expected one of {FORMS}")


def instrument_of(model, tol=DEFAULT_TOLERANCES.verification, form="sandwich"):
    """
    Operational distribution of the model without any reference to the probe detection:
    T_a(rho) = Tr_A[U (E(a) rho E(a) (x) sigma) U^dagger]  (or the one-sided forms E rho, rho E)
    :param model: MeasurementModel; its probe, when present, must reproduce the Born statistics,
        otherwise the operation must be compatible with the observable
    :param tol: tolerance of the precondition and of the instrument invariants
    :param form: "sandwich", "left" or "right"
    :return: Instrument
    """
    logger.info("-- INSTRUMENT OF MODEL (dim_s=%d, dim_a=%d) --", model.dim_s, model.dim_a)
    total = operation_of(model)
    if model.probe is not None:
        require_consistent_probe(model, tol)
    else:
        raise_if_failed(operation_compatibility(total, model.observable, tol),
                        "operation incompatible with the observable")
    components = {a: Superoperator.from_function(_component(model, projector, form), model.dim_s)
                  for a, projector in model.observable.outcomes}
    instrument = Instrument(model.observable, components, total)
    raise_if_failed(instrument.validate(tol), "instrument invariants")
    return instrument


def probe_instrument_of(model, tol=DEFAULT_TOLERANCES.verification):
    """
    Conventional instrument that applies the projection postulate to the probe:
    T'_a(rho) = Tr_A[(1 (x) E^M(a)) U (rho (x) sigma) U^dagger (1 (x) E^M(a))]
    """
    if model.probe is None:
        raise MissingProbeError("the conventional formula needs a probe observable")
    require_consistent_probe(model, tol)
    components = {}
    for a, _ in model.observable.outcomes:
        probe_projector = model.probe_projector(a)
        components[a] = Superoperator.from_function(
            lambda x, p=probe_projector: _reduced(model, p @ model.evolve(x) @ p), model.dim_s)
    instrument = Instrument(model.observable, components, operation_of(model))
    raise_if_failed(instrument.validate(tol), "instrument invariants")
    return instrument


def probe_reduce(model, a, rho, probability_floor=DEFAULT_TOLERANCES.probability_floor):
    """
    Normalized conventional formula rho_a = T'_a(rho) / Tr[(1 (x) E^M(a)) U (rho (x) sigma) U^dagger]
    """
    if model.probe is None:
        raise MissingProbeError("the conventional formula needs a probe observable")
    rho = as_density(rho)
    if rho.dim != model.dim_s:
        raise InvalidArgumentError(f"state of dimension {rho.dim} for an object of dimension {model.dim_s}")
    if not model.probe.has_outcome(a):
        raise ZeroProbabilityOutcomeError(a, 0.0, probability_floor)
    probe_projector = model.probe_projector(a)
    evolved = model.evolve(rho.matrix)
    probability = checked_probability(np.trace(probe_projector @ evolved))
    if probability <= probability_floor:
        raise ZeroProbabilityOutcomeError(a, probability, probability_floor)
    reduced = _reduced(model, probe_projector @ evolved @ probe_projector)
    return DensityOperator(reduced / np.trace(reduced))
