#!/usr/bin/env python3
"""
holopot command line
Exactness checks, potential reconstruction, truncated series, Lipschitz estimates and
the bidisk demo. Every command prints one JSON document on standard output; logs go
to standard error.

Exit codes: 0 success or exact, 1 negative verdict, 2 usage, parse or input error.
"""

import functools
import sys
from pathlib import Path
from typing import Callable, Optional

import click
import structlog
from pydantic import BaseModel

from holopot import (
    BallDomain,
    BlackBoxField,
    HolopotError,
    NotExactError,
    Poly,
    PolyField,
    SampleConfig,
    bidisk_counterexample_probe,
    check_exact,
    lipnorm_estimate,
    numeric_check_exact,
    parse_field,
    parse_point,
    parse_poly,
    reconstruct_potential,
    series_check_exact,
    series_reconstruct,
)
from holopot.logging_utils import setup_logging
from holopot.models import PolyFieldModel, PolyModel, SeriesFieldModel
from holopot.serialization import (
    dump_json,
    exactness_report_to_model,
    field_from_model,
    load_document,
    poly_from_model,
    poly_to_model,
    series_exactness_to_model,
    series_field_from_model,
    series_function_to_model,
)
from holopot.settings import DEFAULT_SAMPLE_COUNT, DEFAULT_SEED, INTERIOR_RADIAL_SCHEDULE, LOG_LEVEL

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

GRAMMAR_HELP = (
    "Expressions use z1..zn, complex literals (2, 1.5, 3i, 1e-05), + - * ^ and "
    "parentheses; '/' only by a number; ';' separates field components. '^' binds "
    "tighter than unary minus, so -z1^2 means -(z1^2). Conjugation, Re/Im and |.| are "
    "rejected."
)


def _emit(model: BaseModel, out: Optional[str] = None) -> None:
    text = dump_json(model)
    click.echo(text)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")


def handle_errors(func: Callable[..., int]) -> Callable[..., None]:
    """Run a command body and turn its result or library errors into exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> None:
        try:
            code = func(*args, **kwargs)
        except HolopotError as error:
            logger.error("command_failed", command=func.__name__, error=str(error))
            click.echo(f"error: {error}", err=True)
            code = EXIT_ERROR
        except OSError as error:
            logger.error("io_failed", command=func.__name__, error=str(error))
            click.echo(f"error: {error}", err=True)
            code = EXIT_ERROR
        except (ValueError, ArithmeticError) as error:
            # exit code 1 is reserved for negative verdicts
            logger.error("invalid_input", command=func.__name__, error=str(error))
            click.echo(f"error: {error}", err=True)
            code = EXIT_ERROR
        sys.exit(code)

    return wrapper


def _require_one(expr: Optional[str], file: Optional[str]) -> None:
    if (expr is None) == (file is None):
        raise click.UsageError("give exactly one of --expr or --file")


def _load_field(expr: Optional[str], file: Optional[str], dimension: Optional[int]) -> PolyField:
    _require_one(expr, file)
    if expr is not None:
        return parse_field(expr, dimension)
    return field_from_model(load_document(Path(file).read_text(encoding="utf-8"), PolyFieldModel))


def _load_scalar(expr: Optional[str], file: Optional[str], dimension: Optional[int]) -> Poly:
    _require_one(expr, file)
    if expr is not None:
        return parse_poly(expr, dimension)
    return poly_from_model(load_document(Path(file).read_text(encoding="utf-8"), PolyModel))


expr_option = click.option("--expr", "expr", type=str, default=None, help="Expression text. " + GRAMMAR_HELP)
file_option = click.option(
    "--file", "file", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON document."
)
dimension_option = click.option(
    "--dimension", type=click.IntRange(min=1), default=None, help="Number of variables n."
)
samples_option = click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=DEFAULT_SAMPLE_COUNT,
    show_default=True,
    help="Number of sample directions.",
)
seed_option = click.option(
    "--seed",
    type=click.IntRange(min=0, max=2**64 - 1),
    default=DEFAULT_SEED,
    envvar="HOLOPOT_SEED",
    show_default=True,
    help="Sampling seed (environment: HOLOPOT_SEED).",
)


@click.group(help=__doc__)
@click.option("--log-level", default=LOG_LEVEL, show_default=True, help="Log level for standard error.")
def cli(log_level: str) -> None:
    setup_logging(log_level)


@cli.command("check-exact", help="Decide whether a polynomial field is a differential. " + GRAMMAR_HELP)
@expr_option
@file_option
@dimension_option
@click.option("--numeric", is_flag=True, help="Use finite-difference partials instead of symbolic ones.")
@samples_option
@seed_option
@handle_errors
def check_exact_command(
    expr: Optional[str],
    file: Optional[str],
    dimension: Optional[int],
    numeric: bool,
    samples: int,
    seed: int,
) -> int:
    field = _load_field(expr, file, dimension)
    if numeric:
        config = SampleConfig(seed=seed, count=samples, radial_schedule=INTERIOR_RADIAL_SCHEDULE)
        report = numeric_check_exact(BlackBoxField.from_poly_field(field), config)
        _emit(report)
        return EXIT_OK if report.verdict == "exact_at_tolerance" else EXIT_NEGATIVE
    symbolic = check_exact(field, SampleConfig(seed=seed, count=samples))
    _emit(exactness_report_to_model(symbolic))
    return EXIT_OK if symbolic.is_exact else EXIT_NEGATIVE


@cli.command(help="Reconstruct the potential g with dg = F and g(center) = 0.")
@expr_option
@file_option
@dimension_option
@click.option("--center", type=str, default=None, help='Star centre, e.g. "0.5, 0.25i". Default: origin.')
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Also write the JSON here.")
@handle_errors
def reconstruct(
    expr: Optional[str],
    file: Optional[str],
    dimension: Optional[int],
    center: Optional[str],
    out: Optional[str],
) -> int:
    field = _load_field(expr, file, dimension)
    point = parse_point(center, field.dimension) if center else None
    try:
        potential = reconstruct_potential(field, point)
    except NotExactError as error:
        logger.info("reconstruction_refused", worst_pair=error.report.worst_pair if error.report else None)
        _emit(exactness_report_to_model(error.report))
        return EXIT_NEGATIVE
    _emit(poly_to_model(potential), out)
    return EXIT_OK


@cli.command("series-reconstruct", help="Reconstruct f = Σ P_m from a truncated series of fields Q_m.")
@click.option("--file", "file", type=click.Path(exists=True, dir_okay=False), required=True, help="Series JSON.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None, help="Also write the JSON here.")
@handle_errors
def series_reconstruct_command(file: str, out: Optional[str]) -> int:
    series = series_field_from_model(load_document(Path(file).read_text(encoding="utf-8"), SeriesFieldModel))
    try:
        function = series_reconstruct(series)
    except NotExactError as error:
        logger.info("series_reconstruction_refused", degree=error.degree)
        _emit(series_exactness_to_model(series_check_exact(series)))
        return EXIT_NEGATIVE
    _emit(series_function_to_model(function), out)
    return EXIT_OK


@cli.command(help="Estimate the Lipschitz constant of a scalar polynomial on the unit ball.")
@expr_option
@file_option
@dimension_option
@click.option("--norm", type=click.Choice(["sup", "euclid"]), default="sup", show_default=True)
@samples_option
@seed_option
@handle_errors
def lipnorm(
    expr: Optional[str],
    file: Optional[str],
    dimension: Optional[int],
    norm: str,
    samples: int,
    seed: int,
) -> int:
    function = _load_scalar(expr, file, dimension)
    domain = BallDomain(function.dimension, "sup" if norm == "sup" else "euclidean")
    _emit(lipnorm_estimate(function, domain, SampleConfig(seed=seed, count=samples)))
    return EXIT_OK


@cli.group(help="Worked examples.")
def demo() -> None:
    pass


@demo.command(help="Bounded F1 = g(z2) on the bidisk whose symmetric completion z1·g'(z2) blows up.")
@click.option("--radius", type=float, required=True, help="Bidisk radius in (0, 1).")
@samples_option
@seed_option
@handle_errors
def bidisk(radius: float, samples: int, seed: int) -> int:
    _emit(bidisk_counterexample_probe(radius, SampleConfig(seed=seed, count=samples)))
    return EXIT_OK


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
