import json

import numpy as np
import pandas as pd

from .model_file import encode_matrix

FORMATS = ("json", "csv")


def reports_payload(reports):
    """
    :param reports: list of VerificationReport
    :return: dict with the overall pass flag and the sorted records of every report
    """
    return {"passed": all(report.passed for report in reports),
            "records": [record for report in reports for record in report.to_records()]}


def render_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_csv(records):
    """
    One row per record; nested values are stored as their JSON text
    """
    frame = pd.DataFrame([{key: json.dumps(value, sort_keys=True) if isinstance(value, (list, dict)) else value
                           for key, value in record.items()} for record in records])
    return frame.to_csv(index=False, lineterminator="\n")


def render(payload, fmt, records_key="records"):
    if fmt == "json":
        return render_json(payload)
    if fmt == "csv":
        return render_csv(payload[records_key] if isinstance(payload, dict) else payload)
    raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")


def kraus_payload(kraus_by_outcome):
    """
    :param kraus_by_outcome: dict outcome -> list of Kraus matrices
    """
    return {"records": [{"outcome": repr(float(a)), "index": k, "kraus": encode_matrix(op)}
                        for a, ops in kraus_by_outcome.items() for k, op in enumerate(ops)]}


def state_payload(rho, outcome=None, probability=None):
    payload = {"density": encode_matrix(np.asarray(rho))}
    if outcome is not None:
        payload["outcome"] = float(outcome)
    if probability is not None:
        payload["probability"] = float(probability)
    return payload


def write_text(text, path):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
