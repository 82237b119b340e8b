"""
Numerical tolerances and environment settings shared by every module.
All tolerances are absolute on normalized quantities unless stated otherwise.
"""
import os
from dataclasses import dataclass

TOLERANCE_ENV_VAR = "REDUCTION_LAB_TOL"

# number of random density operators added to the matrix units in spanning-set checks
SPANNING_RANDOM_STATES = 20
SPANNING_SEED = 0

# eigenvalues of observables are snapped to this many decimals so that outcome lookup is exact
EIGENVALUE_DECIMALS = 12


@dataclass(frozen=True)
class Tolerances:
    """
    :param hermiticity: relative bound on ||m - m^dagger|| / ||m||
    :param psd: smallest eigenvalue allowed is -psd
    :param unit_trace: |Tr(rho) - 1| bound for density operators
    :param degeneracy: eigenvalues closer than this are merged into one outcome
    :param probability_band: probabilities outside [-band, 1 + band] are a numerical error
    :param probability_floor: outcomes with probability at or below the floor have no reduced state
    :param verification: pass threshold of verification reports
    :param rank: Choi eigenvalues at or below this are dropped when extracting Kraus operators
    """
    hermiticity: float = 1e-10
    psd: float = 1e-10
    unit_trace: float = 1e-12
    degeneracy: float = 1e-9
    probability_band: float = 1e-10
    probability_floor: float = 1e-12
    verification: float = 1e-9
    rank: float = 1e-10


DEFAULT_TOLERANCES = Tolerances()


def verification_tolerance():
    """
    :return: the verification tolerance, overridden by the REDUCTION_LAB_TOL environment variable when set
    """
    value = os.environ.get(TOLERANCE_ENV_VAR)
    if value is None or value.strip() == "":
        return DEFAULT_TOLERANCES.verification
    try:
        tol = float(value)
    except ValueError:
        raise ValueError(f"{TOLERANCE_ENV_VAR} must be a positive float, got {value!r}")
    if not tol > 0:
        raise ValueError(f"{TOLERANCE_ENV_VAR} must be a positive float, got {value!r}")
    return tol
