import json

import numpy as np
import pytest
from click.testing import CliRunner

from src.cli import cli, run_cli
from src.models import random_faithful_model, von_neumann_model
from src.quantum import PureState
from src.serialization import dump_model, dump_observable, dump_state


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def files(tmp_path, sigma_z, sigma_x):
    paths = {name: str(tmp_path / f"{name}.json") for name in
             ("sigma_z", "sigma_x", "plus", "one", "von_neumann", "faithful")}
    dump_observable(sigma_z, paths["sigma_z"])
    dump_observable(sigma_x, paths["sigma_x"])
    dump_state(PureState(np.array([1, 1]) / np.sqrt(2)).density(), paths["plus"])
    dump_state(PureState(np.array([0, 1])).density(), paths["one"])
    dump_model(von_neumann_model(sigma_z, 2), paths["von_neumann"])
    dump_model(random_faithful_model(sigma_x, 3, seed=4, sigma_rank=1), paths["faithful"])
    paths["dir"] = tmp_path
    return paths


def read_json(path):
    with open(path) as f:
        return json.load(f)


class TestCheckModel:

    @pytest.mark.parametrize("model", ["von_neumann", "faithful"])
    def test_passes(self, runner, files, model):
        out = str(files["dir"] / "report.json")
        result = runner.invoke(cli, ["check-model", files[model], "--trials", "5", "--out", out])
        assert result.exit_code == 0, result.output
        report = read_json(out)
        assert report["passed"]
        assert all(record["residual"] <= 1e-9 for record in report["records"])
        checks = {record["check"] for record in report["records"]}
        assert {"probe_consistency", "completeness", "left_form", "dual_unitality"} <= checks

    def test_biased_model_fails(self, runner, files):
        biased = str(files["dir"] / "biased.json")
        result = runner.invoke(cli, ["random-model", "--obs", files["sigma_z"], "--dim-a", "2", "--seed", "1",
                                     "--biased", "--out", biased])
        assert result.exit_code == 0, result.output
        out = str(files["dir"] / "report.json")
        result = runner.invoke(cli, ["check-model", biased, "--out", out])
        assert result.exit_code == 1
        report = read_json(out)
        assert not report["passed"]
        assert max(r["residual"] for r in report["records"] if r["check"] == "probe_consistency") >= 0.1

    def test_concurrent_jobs_are_deterministic(self, runner, files):
        outputs = []
        for jobs in ("1", "3"):
            out = str(files["dir"] / f"report{jobs}.json")
            result = runner.invoke(cli, ["check-model", files["faithful"], "--trials", "5", "--jobs", jobs,
                                         "--out", out])
            assert result.exit_code == 0
            with open(out) as f:
                outputs.append(f.read())
        assert outputs[0] == outputs[1]

    def test_csv(self, runner, files):
        out = str(files["dir"] / "report.csv")
        result = runner.invoke(cli, ["check-model", files["von_neumann"], "--trials", "2", "--format", "csv",
                                     "--out", out])
        assert result.exit_code == 0
        with open(out) as f:
            assert f.readline().strip() == "report,check,outcome,residual,tolerance,passed"

    def test_tolerance_from_environment(self, runner, files):
        out = str(files["dir"] / "report.json")
        result = runner.invoke(cli, ["check-model", files["von_neumann"], "--trials", "2", "--out", out],
                               env={"REDUCTION_LAB_TOL": "1e-6"})
        assert result.exit_code == 0
        assert {record["tolerance"] for record in read_json(out)["records"]} == {1e-6}
        result = runner.invoke(cli, ["check-model", files["von_neumann"], "--trials", "2", "--tol", "1e-7",
                                     "--out", out], env={"REDUCTION_LAB_TOL": "1e-6"})
        assert {record["tolerance"] for record in read_json(out)["records"]} == {1e-7}

    def test_parse_error(self, runner, files):
        broken = files["dir"] / "broken.json"
        broken.write_text('{"dim_s": 2,\n "dim_a": }')
        result = runner.invoke(cli, ["check-model", str(broken)])
        assert result.exit_code == 2
        assert "broken.json:2" in result.output

    def test_missing_file(self, runner, files):
        result = runner.invoke(cli, ["check-model", str(files["dir"] / "absent.json")])
        assert result.exit_code == 2


class TestReduce:

    def test_plus_state(self, runner, files):
        out = str(files["dir"] / "reduced.json")
        result = runner.invoke(cli, ["reduce", files["von_neumann"], "--state", files["plus"], "--outcome", "1",
                                     "--out", out])
        assert result.exit_code == 0, result.output
        density = np.array([[complex(*z) for z in row] for row in read_json(out)["density"]])
        np.testing.assert_allclose(density, np.diag([1.0, 0.0]), atol=1e-12)

    def test_zero_probability(self, runner, files):
        result = runner.invoke(cli, ["reduce", files["von_neumann"], "--state", files["one"], "--outcome", "1"])
        assert result.exit_code == 1

    def test_missing_option(self, runner, files):
        result = runner.invoke(cli, ["reduce", files["von_neumann"], "--outcome", "1"])
        assert result.exit_code == 2


class TestOtherCommands:

    def test_instrument(self, runner, files):
        out = str(files["dir"] / "kraus.json")
        result = runner.invoke(cli, ["instrument", files["von_neumann"], "--out", out])
        assert result.exit_code == 0, result.output
        records = read_json(out)["records"]
        assert [r["outcome"] for r in records] == ["-1.0", "1.0"]

    def test_joint(self, runner, files):
        out = str(files["dir"] / "joint.json")
        result = runner.invoke(cli, ["joint", files["von_neumann"], "--second", files["sigma_x"], "--state",
                                     files["plus"], "--out", out])
        assert result.exit_code == 0, result.output
        assert [r["probability"] for r in read_json(out)["records"]] == pytest.approx([0.25] * 4, abs=1e-10)

    def test_demo_nonunique(self, runner, files):
        out = str(files["dir"] / "demo.json")
        result = runner.invoke(cli, ["demo-nonunique", "--out", out])
        assert result.exit_code == 0
        demo = read_json(out)
        assert [d["label"] for d in demo["decompositions"]] == ["phi", "eta"]
        assert demo["min_component_distance"] >= 0.5
        assert [r["outcome"] for r in demo["records"]] == ["-1.0", "1.0"]

    def test_random_model_is_deterministic(self, runner, files):
        paths = [str(files["dir"] / f"model{i}.json") for i in range(2)]
        for path in paths:
            result = runner.invoke(cli, ["random-model", "--obs", files["sigma_x"], "--dim-a", "4", "--seed", "9",
                                         "--sigma-rank", "2", "--out", path])
            assert result.exit_code == 0
        with open(paths[0]) as first, open(paths[1]) as second:
            assert first.read() == second.read()

    def test_negative_seed_is_a_usage_error(self, runner, files):
        result = runner.invoke(cli, ["random-model", "--obs", files["sigma_z"], "--dim-a", "2", "--seed", "-1"])
        assert result.exit_code == 2
        assert not isinstance(result.exception, ValueError)
        result = runner.invoke(cli, ["check-model", files["faithful"], "--seed", "-3"])
        assert result.exit_code == 2

    def test_biased_model_keeps_sigma_rank(self, runner, files):
        path = str(files["dir"] / "biased.json")
        result = runner.invoke(cli, ["random-model", "--obs", files["sigma_z"], "--dim-a", "4", "--seed", "3",
                                     "--sigma-rank", "2", "--biased", "--out", path])
        assert result.exit_code == 0, result.output
        sigma = np.array(read_json(path)["apparatus_state"]["density"])[..., 0]
        assert np.linalg.matrix_rank(sigma, tol=1e-12) == 2

    def test_unknown_subcommand(self):
        assert run_cli(["transmogrify"]) == 2

    def test_run_cli_exit_codes(self, files):
        assert run_cli(["demo-nonunique", "--dim", "3", "--out", str(files["dir"] / "d.json")]) == 0
        assert run_cli(["reduce", files["von_neumann"], "--state", files["one"], "--outcome", "1"]) == 1
