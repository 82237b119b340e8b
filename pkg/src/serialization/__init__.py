from .model_file import (encode_matrix, decode_matrix, encode_vector, decode_vector, encode_observable,
                         decode_observable, encode_state, decode_state, encode_model, decode_model, read_json,
                         load_model, load_observable, load_state, dump_model, dump_observable, dump_state,
                         to_json)
from .report_writer import (FORMATS, reports_payload, render, render_json, render_csv, kraus_payload,
                            state_payload, write_text)
