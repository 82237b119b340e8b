"""
JSON files for models, observables and states. Complex numbers are [re, im] pairs and matrices are
row-major nested lists, so that a dump of a loaded file reproduces it byte for byte.
"""
import json
import logging

import numpy as np

from src.errors import ModelFileError, ReductionLabError
from src.models import MeasurementModel
from src.quantum import DensityOperator, DiscreteObservable, PureState, observable_from_hermitian

logger = logging.getLogger(__name__)

MODEL_FIELDS = ("dim_s", "dim_a", "observable", "apparatus_state", "unitary", "probe")


def encode_complex(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v):
    return [encode_complex(z) for z in np.asarray(v).reshape(-1)]


def encode_matrix(m):
    return [encode_vector(row) for row in np.asarray(m)]


def _decode_complex(value, path, field):
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in value)):
        raise ModelFileError(path, field, f"expected a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def decode_vector(value, path, field):
    if not isinstance(value, list) or not value:
        raise ModelFileError(path, field, "expected a non-empty list of [re, im] pairs")
    return np.array([_decode_complex(z, path, f"{field}[{i}]") for i, z in enumerate(value)],
                    dtype=np.complex128)


def decode_matrix(value, path, field, dim=None):
    """
    :param dim: expected dimension, checked when given
    :return: square complex ndarray
    """
    if not isinstance(value, list) or not value:
        raise ModelFileError(path, field, "expected a non-empty list of rows")
    rows = [decode_vector(row, path, f"{field}[{i}]") for i, row in enumerate(value)]
    size = len(rows)
    for i, row in enumerate(rows):
        if row.size != size:
            raise ModelFileError(path, f"{field}[{i}]", f"row of length {row.size} in a {size}-row matrix")
    if dim is not None and size != dim:
        raise ModelFileError(path, field, f"matrix of dimension {size}, expected {dim}")
    return np.vstack(rows)


def _require(data, key, path, field=""):
    if not isinstance(data, dict):
        raise ModelFileError(path, field, "expected a JSON object")
    if key not in data:
        raise ModelFileError(path, f"{field}.{key}" if field else key, "missing field")
    return data[key]


def _positive_int(value, path, field):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ModelFileError(path, field, f"expected a positive integer, got {value!r}")
    return value


def encode_observable(obs):
    return {"eigenvalues": [float(a) for a in obs.eigenvalues],
            "projectors": [encode_matrix(p) for p in (outcome.projector for outcome in obs.outcomes)]}


def decode_observable(data, path, field="observable", dim=None):
    """
    Either {"eigenvalues": [...], "projectors": [...]} or {"hermitian": matrix}
    """
    if not isinstance(data, dict):
        raise ModelFileError(path, field, "expected a JSON object")
    prefix = f"{field}." if field else ""
    try:
        if "hermitian" in data:
            return observable_from_hermitian(decode_matrix(data["hermitian"], path, f"{prefix}hermitian", dim))
        eigenvalues = _require(data, "eigenvalues", path, field)
        projectors = _require(data, "projectors", path, field)
        if (not isinstance(eigenvalues, list) or not isinstance(projectors, list)
                or not eigenvalues or len(eigenvalues) != len(projectors)):
            raise ModelFileError(path, field, "eigenvalues and projectors must be lists of equal length")
        for i, a in enumerate(eigenvalues):
            if not isinstance(a, (int, float)) or isinstance(a, bool):
                raise ModelFileError(path, f"{prefix}eigenvalues[{i}]", f"expected a real number, got {a!r}")
        matrices = [decode_matrix(p, path, f"{prefix}projectors[{i}]", dim) for i, p in enumerate(projectors)]
        return DiscreteObservable(matrices[0].shape[0], tuple(zip((float(a) for a in eigenvalues), matrices)))
    except ModelFileError:
        raise
    except ReductionLabError as e:
        raise ModelFileError(path, field, str(e))


def encode_state(rho):
    return {"density": encode_matrix(rho.matrix)}


def decode_state(data, path, field="", dim=None):
    """
    Either {"density": matrix} or {"vector": [...]} for a pure state
    """
    if not isinstance(data, dict):
        raise ModelFileError(path, field, "expected a JSON object")
    prefix = f"{field}." if field else ""
    try:
        if "vector" in data:
            vector = decode_vector(data["vector"], path, f"{prefix}vector")
            if dim is not None and vector.size != dim:
                raise ModelFileError(path, f"{prefix}vector", f"vector of dimension {vector.size}, expected {dim}")
            return PureState(vector).density()
        return DensityOperator(decode_matrix(_require(data, "density", path, field), path, f"{prefix}density", dim))
    except ModelFileError:
        raise
    except ReductionLabError as e:
        raise ModelFileError(path, field or "density", str(e))


def encode_model(model):
    data = {"dim_s": model.dim_s,
            "dim_a": model.dim_a,
            "observable": encode_observable(model.observable),
            "apparatus_state": encode_state(model.apparatus_state),
            "unitary": encode_matrix(model.unitary)}
    if model.probe is not None:
        data["probe"] = encode_observable(model.probe)
    return data


def decode_model(data, path):
    if not isinstance(data, dict):
        raise ModelFileError(path, "", "expected a JSON object")
    unknown = sorted(set(data) - set(MODEL_FIELDS))
    if unknown:
        raise ModelFileError(path, unknown[0], "unknown field")
    dim_s = _positive_int(_require(data, "dim_s", path), path, "dim_s")
    dim_a = _positive_int(_require(data, "dim_a", path), path, "dim_a")
    observable = decode_observable(_require(data, "observable", path), path, "observable", dim_s)
    sigma = decode_state(_require(data, "apparatus_state", path), path, "apparatus_state", dim_a)
    unitary = decode_matrix(_require(data, "unitary", path), path, "unitary", dim_s * dim_a)
    probe = None
    if data.get("probe") is not None:
        probe = decode_observable(data["probe"], path, "probe", dim_a)
    try:
        return MeasurementModel(dim_s, dim_a, observable, sigma, unitary, probe)
    except ReductionLabError as e:
        raise ModelFileError(path, "", str(e))


def to_json(data):
    return json.dumps(data, indent=2) + "\n"


def read_json(path):
    """
    :return: parsed JSON, with syntax errors reported as ModelFileError carrying line and column
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ModelFileError(path, "", f"cannot read file: {e.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(path, "", e.msg, e.lineno, e.colno)


def load_model(path):
    logger.debug("loading model from %s", path)
    return decode_model(read_json(path), path)


def load_observable(path, dim=None):
    return decode_observable(read_json(path), path, "", dim)


def load_state(path, dim=None):
    return decode_state(read_json(path), path, "", dim)


def dump_model(model, path=None):
    """
    :param path: file to write, or None
    :return: the JSON text
    """
    text = to_json(encode_model(model))
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def dump_observable(obs, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(encode_observable(obs)))


def dump_state(rho, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(encode_state(rho)))
