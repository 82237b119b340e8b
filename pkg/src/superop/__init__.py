from .superoperator import (Superoperator, apply, dual, trace_of_map, is_positive_sampled, is_trace_preserving,
                            vec, unvec)
from .choi import ChoiMatrix, choi, kraus_from_choi, is_completely_positive
from .decomposition import TraceClassDecomposition, decompose_trace_class, apply_by_decomposition
