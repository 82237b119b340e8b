import json

import numpy as np
import pytest

from src.errors import ModelFileError
from src.instrument import VerificationReport, CheckType
from src.models import random_faithful_model, von_neumann_model
from src.serialization import (dump_model, dump_observable, encode_model, load_model, load_observable, load_state,
                               render, reports_payload)
from tests.helpers import SIGMA_X, degenerate_observable


def write(path, data):
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


class TestModelFile:

    @pytest.mark.parametrize("build", [lambda obs: von_neumann_model(obs, 3, pointer_basis=1),
                                       lambda obs: random_faithful_model(obs, 4, seed=3, sigma_rank=2)])
    def test_round_trip(self, sigma_x, tmp_path, build):
        model = build(sigma_x)
        path = str(tmp_path / "model.json")
        text = dump_model(model, path)
        loaded = load_model(path)
        assert np.array_equal(loaded.unitary, model.unitary)
        assert np.array_equal(loaded.apparatus_state.matrix, model.apparatus_state.matrix)
        assert loaded.observable.eigenvalues == model.observable.eigenvalues
        assert loaded.probe.eigenvalues == model.probe.eigenvalues
        assert dump_model(loaded) == text

    def test_degenerate_round_trip(self, tmp_path):
        model = random_faithful_model(degenerate_observable(), 3, seed=0)
        path = str(tmp_path / "model.json")
        text = dump_model(model, path)
        assert dump_model(load_model(path)) == text

    def test_model_without_probe(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        del data["probe"]
        assert load_model(write(tmp_path / "m.json", data)).probe is None

    def test_syntax_error_location(self, tmp_path):
        path = write(tmp_path / "broken.json", '{\n  "dim_s": 2,\n  "dim_a": ,\n}')
        with pytest.raises(ModelFileError) as e:
            load_model(path)
        assert e.value.line == 3
        assert e.value.column is not None

    def test_missing_field(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        del data["unitary"]
        with pytest.raises(ModelFileError) as e:
            load_model(write(tmp_path / "m.json", data))
        assert e.value.field == "unitary"

    def test_bad_entry(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        data["unitary"][0][1] = [0.0]
        with pytest.raises(ModelFileError) as e:
            load_model(write(tmp_path / "m.json", data))
        assert e.value.field == "unitary[0][1]"

    def test_wrong_dimension(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        data["dim_a"] = 3
        with pytest.raises(ModelFileError):
            load_model(write(tmp_path / "m.json", data))

    def test_non_unitary(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        data["unitary"][0][0] = [2.0, 0.0]
        with pytest.raises(ModelFileError):
            load_model(write(tmp_path / "m.json", data))

    def test_unknown_field(self, sigma_x, tmp_path):
        data = encode_model(von_neumann_model(sigma_x, 2))
        data["hamiltonian"] = []
        with pytest.raises(ModelFileError) as e:
            load_model(write(tmp_path / "m.json", data))
        assert e.value.field == "hamiltonian"


class TestObservableAndStateFiles:

    def test_hermitian_observable(self, tmp_path):
        matrix = [[[float(z.real), float(z.imag)] for z in row] for row in SIGMA_X]
        obs = load_observable(write(tmp_path / "x.json", {"hermitian": matrix}))
        assert obs.eigenvalues == [-1.0, 1.0]

    def test_observable_round_trip(self, sigma_x, tmp_path):
        path = str(tmp_path / "x.json")
        dump_observable(sigma_x, path)
        assert np.array_equal(load_observable(path).to_hermitian(), sigma_x.to_hermitian())

    def test_pure_state(self, tmp_path):
        h = 1 / np.sqrt(2)
        rho = load_state(write(tmp_path / "plus.json", {"vector": [[h, 0.0], [h, 0.0]]}))
        np.testing.assert_allclose(rho.matrix, np.full((2, 2), 0.5), atol=1e-15)

    def test_state_not_positive(self, tmp_path):
        data = {"density": [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]}
        with pytest.raises(ModelFileError):
            load_state(write(tmp_path / "bad.json", data))

    def test_state_dimension(self, tmp_path):
        with pytest.raises(ModelFileError):
            load_state(write(tmp_path / "s.json", {"vector": [[1.0, 0.0]]}), dim=2)


class TestReports:

    def _report(self):
        report = VerificationReport("r")
        report.add(CheckType.OUTCOME_TRACE, 1.0, 1e-12, 1e-9)
        report.add(CheckType.COMPLETENESS, None, 0.0, 1e-9)
        return report

    def test_json(self):
        text = render(reports_payload([self._report()]), "json")
        payload = json.loads(text)
        assert payload["passed"]
        assert [r["check"] for r in payload["records"]] == ["completeness", "outcome_trace"]
        assert text == render(reports_payload([self._report()]), "json")

    def test_csv(self):
        lines = render(reports_payload([self._report()]), "csv").splitlines()
        assert lines[0] == "report,check,outcome,residual,tolerance,passed"
        assert lines[1].startswith("r,completeness,,0.0")
        assert len(lines) == 3
