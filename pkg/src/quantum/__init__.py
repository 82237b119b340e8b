from .states import DensityOperator, PureState, mix, as_density
from .observable import (DiscreteObservable, Outcome, observable_from_hermitian, born_probability,
                         checked_probability, snap_eigenvalue)
