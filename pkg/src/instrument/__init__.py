from .check_type import CheckType
from .report import CheckRecord, VerificationReport, outcome_label
from .instrument import (Instrument, luders_instrument, outcome_probability, reduce, reduce_or_mixed, nonselective,
                         instrument_from_operation, operation_compatibility, compare_instruments, spanning_set,
                         raise_if_failed)
from .verification import verify_theorem1, verify_dual_lemma
