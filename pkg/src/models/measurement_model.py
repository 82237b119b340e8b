from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import DEFAULT_TOLERANCES
from src.errors import InvalidArgumentError
from src.instrument import CheckType, VerificationReport
from src.linalg import as_matrix, dagger, is_unitary, tensor
from src.quantum import DensityOperator, DiscreteObservable, as_density


@dataclass(frozen=True, eq=False)
class MeasurementModel:
    """
    Unitary object-apparatus model (sigma, U, M) of an apparatus measuring `observable`.
    :param dim_s: dimension of the object space H_S
    :param dim_a: dimension of the apparatus space H_A
    :param observable: DiscreteObservable on H_S
    :param apparatus_state: DensityOperator sigma on H_A
    :param unitary: interaction U on H_S (x) H_A
    :param probe: optional DiscreteObservable M on H_A with the same eigenvalues as the observable
    """
    dim_s: int
    dim_a: int
    observable: DiscreteObservable
    apparatus_state: DensityOperator
    unitary: np.ndarray
    probe: Optional[DiscreteObservable] = None

    def __post_init__(self):
        if self.observable.dim != self.dim_s:
            raise InvalidArgumentError(f"observable of dimension {self.observable.dim}, object has {self.dim_s}")
        sigma = as_density(self.apparatus_state)
        if sigma.dim != self.dim_a:
            raise InvalidArgumentError(f"apparatus state of dimension {sigma.dim}, apparatus has {self.dim_a}")
        unitary = as_matrix(self.unitary, "unitary").copy()
        if unitary.shape[0] != self.dim_s * self.dim_a:
            raise InvalidArgumentError(f"unitary of dimension {unitary.shape[0]} on a "
                                       f"{self.dim_s} x {self.dim_a} composite space")
        if not is_unitary(unitary):
            raise InvalidArgumentError("interaction is not unitary")
        if self.probe is not None:
            if self.probe.dim != self.dim_a:
                raise InvalidArgumentError(f"probe of dimension {self.probe.dim}, apparatus has {self.dim_a}")
            if self.probe.eigenvalues != self.observable.eigenvalues:
                raise InvalidArgumentError(f"probe eigenvalues {self.probe.eigenvalues} differ from the "
                                           f"observable's {self.observable.eigenvalues}")
        unitary.setflags(write=False)
        object.__setattr__(self, "apparatus_state", sigma)
        object.__setattr__(self, "unitary", unitary)

    def evolve(self, rho):
        """
        U (rho (x) sigma) U^dagger for any operator rho on H_S
        """
        return self.unitary @ tensor(rho, self.apparatus_state.matrix) @ dagger(self.unitary)

    def probe_projector(self, a):
        """
        1 (x) E^M(a)
        """
        return tensor(np.eye(self.dim_s), self.probe.projector(a))

    def rotated_apparatus(self, v):
        """
        Same model followed by an apparatus-local unitary V: U' = (1 (x) V) U, M' = V M V^dagger
        """
        v = as_matrix(v, "apparatus unitary")
        unitary = tensor(np.eye(self.dim_s), v) @ self.unitary
        probe = None if self.probe is None else self.probe.conjugated(v)
        return MeasurementModel(self.dim_s, self.dim_a, self.observable, self.apparatus_state, unitary, probe)

    def with_apparatus_state(self, sigma):
        return MeasurementModel(self.dim_s, self.dim_a, self.observable, as_density(sigma), self.unitary,
                                self.probe)

    def with_probe(self, probe):
        return MeasurementModel(self.dim_s, self.dim_a, self.observable, self.apparatus_state, self.unitary,
                                probe)


@dataclass(frozen=True)
class ConsistencyReport:
    """
    Residuals ||F_a - E^A(a)|| of the probe statistics, per outcome
    """
    residuals: dict
    worst_outcome: float
    passed: bool
    tolerance: float

    @classmethod
    def from_residuals(cls, residuals, tolerance=DEFAULT_TOLERANCES.verification):
        worst_outcome = max(residuals, key=residuals.get)
        passed = all(residual <= tolerance for residual in residuals.values())
        return cls(dict(residuals), worst_outcome, passed, tolerance)

    @property
    def worst_residual(self):
        return self.residuals[self.worst_outcome]

    def to_verification_report(self):
        report = VerificationReport("probe_consistency")
        for a, residual in self.residuals.items():
            report.add(CheckType.PROBE_CONSISTENCY, a, residual, self.tolerance)
        return report
