from .matcore import (as_matrix, dagger, matrix_unit, tensor, partial_trace_apparatus, is_hermitian,
                      hermitian_eig, trace_norm, operator_norm, max_abs, trace_distance, min_eigenvalue,
                      is_psd, is_unitary, random_unitary, random_isometry, random_pure_state, random_density,
                      random_hermitian, random_matrix, complete_to_unitary)
