import logging
from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.instrument import instrument_from_operation, luders_instrument
from src.linalg import max_abs, trace_distance
from src.quantum import DensityOperator, DiscreteObservable, PureState
from src.superop import apply

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    """
    Convex decomposition sum_n w_n |psi_n><psi_n| of a density operator into pure states
    """
    label: str
    weights: tuple
    states: tuple

    def reassemble(self):
        return sum(w * state.projector() for w, state in zip(self.weights, self.states))

    def components(self):
        return [w * state.projector() for w, state in zip(self.weights, self.states)]


@dataclass(frozen=True, eq=False)
class DecompositionExhibit:
    """
    A measured state rho, the mixture it is sent to by the nonselective measurement, two distinct pure-state
    decompositions of that mixture and the unique instrument components T_a(rho).
    """
    observable: DiscreteObservable
    input_state: PureState
    mixed_state: DensityOperator
    decompositions: tuple
    instrument_components: dict

    def reassembly_residuals(self):
        return {d.label: max_abs(d.reassemble() - self.mixed_state.matrix) for d in self.decompositions}

    def min_component_distance(self, first=0, second=1):
        """
        Smallest trace distance between a pure state of one decomposition that is absent from the other
        and any pure state of the other decomposition
        """
        states_a = [s.projector() for s in self.decompositions[first].states]
        states_b = [s.projector() for s in self.decompositions[second].states]
        only_a = [p for p in states_a if all(max_abs(p - q) > 1e-12 for q in states_b)]
        return min(trace_distance(p, q) for p in only_a for q in states_b)

    def instrument_residual(self):
        """
        Largest deviation between T_{a_n}(rho) and the n-th component of the eigenbasis decomposition
        """
        phi = self.decompositions[0]
        return max(max_abs(self.instrument_components[a] - c)
                   for a, c in zip(self.observable.eigenvalues, _by_eigenvalue(self.observable, phi)))


def _by_eigenvalue(obs, decomposition):
    # eigenbasis components are listed in basis order; the observable sorts outcomes by eigenvalue
    by_projector = []
    for a, projector in obs.outcomes:
        for w, state in zip(decomposition.weights, decomposition.states):
            if max_abs(state.projector() - projector) <= 1e-12:
                by_projector.append(w * projector)
                break
    return by_projector


def exhibit_eigenvalues(dim):
    return [1.0, -1.0] + [float(n) for n in range(2, dim)]


def nonuniqueness_exhibit(dim=2):
    """
    The object is prepared in psi with equal weights on phi_0 and phi_1 and is measured by the nondegenerate
    observable with eigenbasis phi. The resulting mixture sum_n |<phi_n|psi>|^2 |phi_n><phi_n| also decomposes
    with eta_{+-} = (phi_0 +- phi_1)/sqrt(2) in place of phi_0 and phi_1, yet the instrument route singles out
    the eigenbasis components.
    :param dim: object dimension, at least 2
    :return: DecompositionExhibit
    """
    if dim < 2:
        raise InvalidArgumentError(f"the exhibit needs dimension at least 2, got {dim}")
    logger.info("-- NONUNIQUENESS EXHIBIT (dim=%d) --", dim)
    basis = np.eye(dim, dtype=np.complex128)
    obs = DiscreteObservable.from_basis(exhibit_eigenvalues(dim), basis)

    if dim == 2:
        psi = (basis[:, 0] + basis[:, 1]) / np.sqrt(2)
    else:
        psi = (basis[:, 0] + basis[:, 1]) / 2 + np.sqrt(1 / (2 * (dim - 2))) * basis[:, 2:].sum(axis=1)
    psi = PureState(psi)
    weights = tuple(float(abs(psi.vector[n]) ** 2) for n in range(dim))

    phi = Decomposition("phi", weights, tuple(PureState(basis[:, n]) for n in range(dim)))
    eta_plus = PureState((basis[:, 0] + basis[:, 1]) / np.sqrt(2))
    eta_minus = PureState((basis[:, 0] - basis[:, 1]) / np.sqrt(2))
    eta = Decomposition("eta", weights, (eta_plus, eta_minus) + phi.states[2:])

    dephasing = luders_instrument(obs).total
    instrument = instrument_from_operation(dephasing, obs)
    rho = psi.projector()
    components = {a: apply(instrument.components[a], rho) for a in instrument.outcomes}
    mixed = DensityOperator(apply(dephasing, rho))
    return DecompositionExhibit(obs, psi, mixed, (phi, eta), components)
