import logging
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from src.config import TOLERANCE_ENV_VAR, verification_tolerance
from src.errors import (ModelFileError, NotAMeasurementError, NotCompletelyPositiveError, ReductionLabError,
                        ZeroProbabilityOutcomeError)
from src.instrument import CheckType, VerificationReport, reduce, verify_dual_lemma, verify_theorem1
from src.models import instrument_of, probe_consistency, random_biased_model, random_faithful_model
from src.quantum import snap_eigenvalue
from src.scenarios import joint_distribution, nonuniqueness_exhibit
from src.serialization import (FORMATS, dump_model, encode_matrix, encode_vector, kraus_payload, load_model,
                               load_observable, load_state, render, reports_payload, state_payload, write_text)
from src.superop import choi, kraus_from_choi

logger = logging.getLogger(__name__)

PROG_NAME = "reduction-lab"


class InputError(click.ClickException):
    """
    Unreadable or malformed input file, reported with exit code 2 like a usage error
    """
    exit_code = 2


class RefusedError(click.ClickException):
    """
    The input is well formed but the requested quantity does not exist (exit code 1)
    """
    exit_code = 1


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        write_text(text, out)
        logger.info("report written to %s", out)


def _resolve_tol(tol):
    return tol if tol is not None else verification_tolerance()


def _run(func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except ModelFileError as e:
        raise InputError(str(e))
    except (NotAMeasurementError, ZeroProbabilityOutcomeError, NotCompletelyPositiveError) as e:
        raise RefusedError(str(e))
    except ReductionLabError as e:
        raise InputError(str(e))


def tol_option(func):
    return click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=None,
                        envvar=TOLERANCE_ENV_VAR, show_envvar=True,
                        help="verification tolerance (default 1e-9)")(func)


def output_options(func):
    func = click.option("--out", type=click.Path(dir_okay=False), default=None,
                        help="write the report to this file instead of stdout")(func)
    func = click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True,
                        help="report format")(func)
    return func


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="log debug messages to stderr")
def cli(verbose):
    """
    Measurement models, their instruments and the state reduction they determine
    """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _check_reports(model, tol, trials, seed, jobs, progress):
    reports = []
    if model.probe is not None:
        consistency = probe_consistency(model, tol).to_verification_report()
        reports.append(consistency)
        if not consistency.passed:
            return reports
    try:
        ins = instrument_of(model, tol)
    except NotAMeasurementError as e:
        refused = VerificationReport("instrument_extraction")
        refused.add(CheckType.INSTRUMENT_EXTRACTION, e.outcome, e.residual, e.tolerance)
        reports.append(refused)
        return reports

    checks = [(ins.validate, (tol,), {}),
              (verify_theorem1, (ins,), {"trials": trials, "seed": seed, "tol": tol, "progress": progress}),
              (verify_dual_lemma, (ins,), {"samples": trials, "seed": seed, "tol": tol})]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(func, *args, **kwargs) for func, args, kwargs in checks]
        reports.extend(future.result() for future in futures)
    return reports


@cli.command("check-model")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--trials", type=click.IntRange(min=0), default=50, show_default=True,
              help="random test operators per check")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="number of checks run concurrently")
@click.option("--progress", is_flag=True, help="show progress bars")
@tol_option
@output_options
def check_model(model_file, trials, seed, jobs, progress, tol, fmt, out):
    """
    Probe consistency, instrument invariants and the equal forms of the reduction formula
    """
    tol = _resolve_tol(tol)
    model = _run(load_model, model_file)
    logger.info("-- CHECK MODEL %s --", model_file)
    reports = _run(_check_reports, model, tol, trials, seed, jobs, progress)
    payload = reports_payload(reports)
    _emit(render(payload, fmt), out)
    if not payload["passed"]:
        worst = max((r for report in reports for r in report.failures()),
                    key=lambda record: record.residual / record.tolerance)
        click.echo(f"verification failed: {worst.check} residual {worst.residual:.3e}", err=True)
        sys.exit(1)


@cli.command("reduce")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--state", "state_file", type=click.Path(dir_okay=False), required=True)
@click.option("--outcome", type=float, required=True)
@tol_option
@output_options
def reduce_state(model_file, state_file, outcome, tol, fmt, out):
    """
    State of the object after the outcome has been obtained
    """
    tol = _resolve_tol(tol)
    model = _run(load_model, model_file)
    rho = _run(load_state, state_file, model.dim_s)
    ins = _run(instrument_of, model, tol)
    a = snap_eigenvalue(outcome)
    reduced = _run(reduce, ins, a, rho)
    payload = state_payload(reduced.matrix, a)
    if fmt == "csv":
        payload = {"records": [{"row": i, "density": row} for i, row in enumerate(payload["density"])]}
    _emit(render(payload, fmt), out)


@cli.command("instrument")
@click.argument("model_file", type=click.Path(dir_okay=False))
@tol_option
@output_options
def instrument(model_file, tol, fmt, out):
    """
    Kraus operators of every component of the model's instrument
    """
    tol = _resolve_tol(tol)
    model = _run(load_model, model_file)
    ins = _run(instrument_of, model, tol)
    kraus = {a: _run(kraus_from_choi, choi(ins.components[a])) for a in ins.outcomes}
    _emit(render(kraus_payload(kraus), fmt), out)


@cli.command("joint")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--second", "second_file", type=click.Path(dir_okay=False), required=True,
              help="observable measured after the model's one")
@click.option("--state", "state_file", type=click.Path(dir_okay=False), required=True)
@tol_option
@output_options
def joint(model_file, second_file, state_file, tol, fmt, out):
    """
    Joint distribution of two consecutive measurements
    """
    tol = _resolve_tol(tol)
    model = _run(load_model, model_file)
    second = _run(load_observable, second_file, model.dim_s)
    rho = _run(load_state, state_file, model.dim_s)
    jd = _run(joint_distribution, model, second, rho, tol)
    _emit(render({"records": jd.to_records()}, fmt), out)


@cli.command("demo-nonunique")
@click.option("--dim", type=click.IntRange(min=2), default=2, show_default=True)
@output_options
def demo_nonunique(dim, fmt, out):
    """
    Two decompositions of the same mixture, and the unique components picked by the instrument
    """
    exhibit = nonuniqueness_exhibit(dim)
    payload = {
        "dim": dim,
        "mixed_state": encode_matrix(exhibit.mixed_state.matrix),
        "decompositions": [{"label": d.label,
                            "weights": list(d.weights),
                            "states": [encode_vector(state.vector) for state in d.states]}
                           for d in exhibit.decompositions],
        "min_component_distance": exhibit.min_component_distance(),
        "records": [{"outcome": repr(float(a)), "component": encode_matrix(c)}
                    for a, c in exhibit.instrument_components.items()],
    }
    _emit(render(payload, fmt), out)


@cli.command("random-model")
@click.option("--obs", "obs_file", type=click.Path(dir_okay=False), required=True,
              help="observable measured by the model")
@click.option("--dim-a", type=click.IntRange(min=1), required=True, help="apparatus dimension")
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option("--sigma-rank", type=click.IntRange(min=1), default=1, show_default=True,
              help="rank of the apparatus state")
@click.option("--biased", is_flag=True, help="exchange two probe sectors so the probe misreports")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def random_model(obs_file, dim_a, seed, sigma_rank, biased, out):
    """
    Random model file measuring the given observable
    """
    obs = _run(load_observable, obs_file)
    if biased:
        model = _run(random_biased_model, obs, dim_a, seed, sigma_rank=sigma_rank)
    else:
        model = _run(random_faithful_model, obs, dim_a, seed, sigma_rank)
    _emit(dump_model(model), out)


def run_cli(args):
    """
    Run the command line with the given arguments
    :return: exit code, 0 on success, 1 on verification failure, 2 on usage or input errors
    """
    try:
        cli.main(args=list(args), prog_name=PROG_NAME, standalone_mode=True)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0
