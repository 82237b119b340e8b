import logging

import numpy as np
import scipy.linalg as la

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError, MissingProbeError
from src.instrument import Instrument, raise_if_failed
from src.linalg import as_matrix, dagger, max_abs, partial_trace_apparatus, tensor
from src.superop import Superoperator
from .dilation import require_consistent_probe, operation_of

logger = logging.getLogger(__name__)


def absorbing_detector(probe):
    """
    Detector that absorbs the probe: every vector of the sector of outcome a is sent to the first apparatus
    basis vector, D_{a,k} = |e_0><v_{a,k}|. It reads out the probe without obeying the projection postulate.
    :param probe: DiscreteObservable on H_A
    :return: dict outcome -> list of Kraus operators on H_A
    """
    e0 = np.zeros(probe.dim, dtype=np.complex128)
    e0[0] = 1.0
    detector = {}
    for a, projector in probe.outcomes:
        sector = la.orth(projector)
        detector[a] = [np.outer(e0, np.conj(sector[:, k])) for k in range(sector.shape[1])]
    return detector


def _check_detector(model, detector, tol):
    for a in detector:
        if not model.probe.has_outcome(a):
            raise InvalidArgumentError(f"detector outcome {a} is not a probe outcome")
    for a, projector in model.probe.outcomes:
        kraus_operators = [as_matrix(k, "detector Kraus operator") for k in detector.get(a, [])]
        if any(k.shape[0] != model.dim_a for k in kraus_operators):
            raise InvalidArgumentError(f"detector Kraus operator of outcome {a} does not act on the apparatus")
        effect = sum((dagger(k) @ k for k in kraus_operators), np.zeros_like(projector))
        if max_abs(effect - projector) > tol:
            raise InvalidArgumentError(f"detector effect of outcome {a} differs from the probe projector")


def detected_instrument_of(model, detector, tol=DEFAULT_TOLERANCES.verification):
    """
    State reduction when the probe is read out by an apparatus-side instrument with Kraus operators D_{a,k}:
    T_a(rho) = Tr_A[sum_k (1 (x) D_{a,k}) U (rho (x) sigma) U^dagger (1 (x) D_{a,k}^dagger)]
    For a model with a consistent probe this equals instrument_of(model) whatever the detector.
    :param model: MeasurementModel with a probe
    :param detector: dict outcome -> Kraus operators with sum_k D^dagger D = E^M(a)
    :return: Instrument
    """
    if model.probe is None:
        raise MissingProbeError("detection needs a probe observable")
    _check_detector(model, detector, tol)
    require_consistent_probe(model, tol)
    logger.info("-- DETECTED INSTRUMENT (%d outcomes) --", len(model.observable.outcomes))

    components = {}
    for a, _ in model.observable.outcomes:
        lifted = [tensor(np.eye(model.dim_s), as_matrix(k)) for k in detector.get(a, [])]

        def detected(x, lifted=lifted):
            evolved = model.evolve(x)
            out = sum((k @ evolved @ dagger(k) for k in lifted), np.zeros_like(evolved))
            return partial_trace_apparatus(out, model.dim_s, model.dim_a)

        components[a] = Superoperator.from_function(detected, model.dim_s)
    instrument = Instrument(model.observable, components, operation_of(model))
    raise_if_failed(instrument.validate(tol), "instrument invariants")
    return instrument
