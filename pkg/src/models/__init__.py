from .measurement_model import MeasurementModel, ConsistencyReport
from .dilation import (FORMS, operation_of, probe_consistency, instrument_of, probe_instrument_of,
                       probe_reduce)
from .generators import von_neumann_model, random_faithful_model, random_biased_model, sector_sizes
from .detection import absorbing_detector, detected_instrument_of
