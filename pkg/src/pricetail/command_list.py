"""
Entry point for the pricetail command-line.
Creates the Typer app and its commands
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional
from tabulate import tabulate

import typer
from typer import Typer

from pricetail.api.acceptance_api import PASS, SKIP, AcceptanceApi, CriterionResult
from pricetail.api.experiment_api import ExperimentApi
from pricetail.command_processor import CommandProcessor
from pricetail.decorators import catch_pricetail_exceptions
from pricetail.exceptions import AcceptanceFailed, ConfigFailedValidation
from pricetail.managers.config_manager import ConfigManager
from pricetail.managers.sweep_manager import SweepManager
from pricetail.parsers.config_parser import ExperimentKind
from pricetail.settings import Settings
from pricetail.type_aliases import ErrorDictType, SummaryType
from pricetail.utils import reorder_data

app = Typer(add_completion=False, help="Numerical laboratory for late-time tails of waves on black hole spacetimes")

settings = Settings()
config_manager = ConfigManager()
experiment_api = ExperimentApi()
acceptance_api = AcceptanceApi()
sweep_manager = SweepManager(config_manager=config_manager)
processor = CommandProcessor(config_manager=config_manager, experiment_api=experiment_api,
                             acceptance_api=acceptance_api, sweep_manager=sweep_manager)

logging.basicConfig(level=logging.INFO)


def format_validation_messages(validation_dict: ErrorDictType) -> str:
    """
    Format the error, warnings and info messages collected during validation for printing to the terminal.
    """
    message = ""
    for key in validation_dict:
        for item in validation_dict[key]:
            if message:
                message += "\n"
            message += f"{key.capitalize()}: {item}"
    return message


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, complex):
        return f"{value.real:.6g}{value.imag:+.6g}j"
    return str(value)


def format_summary(name: str, summary: SummaryType) -> str:
    """ One line 'name: key=value, ...' """
    values = ", ".join(f"{key}={format_value(value)}" for key, value in summary.items())
    return f"{name}: {values}" if values else f"{name}: done"


def results_table(results: List[CriterionResult]) -> str:
    desired_order_columns = ["criterion", "status", "measured", "expected", "detail"]
    rows = reorder_data([result.as_row() for result in results], desired_order_columns)
    return str(tabulate(rows, headers={"criterion": "criterion",
                                       "status": "status",
                                       "measured": "measured",
                                       "expected": "expected",
                                       "detail": "detail"}))


def check_results(results: List[CriterionResult]) -> None:
    """ Print the PASS/FAIL table, raise when a criterion did not pass """
    typer.echo(results_table(results))
    failed = [result.criterion for result in results if not result.passed]
    if failed:
        raise AcceptanceFailed(", ".join(failed))
    typer.echo(f"{len(results)} criteria passed")


def resolve_jobs(jobs: Optional[int]) -> int:
    return settings.jobs if jobs is None else jobs


def resolve_out(out_dir: Optional[Path]) -> Path:
    return settings.output_dir if out_dir is None else out_dir


@app.command("run")
@catch_pricetail_exceptions
def run(
    config: Path = typer.Option(..., "--config", "-c", help="Experiment config file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory for the CSV artifacts"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1,
                                       help="Worker processes (default: PRICETAIL_JOBS or 1)"),
) -> None:
    """
    Run the experiment described by a config and print a one-line summary
    """
    experiment, summary = processor.run(config_file=config, out_dir=resolve_out(out), jobs=resolve_jobs(jobs))
    if experiment.kind == ExperimentKind.VERIFY:
        statuses: Dict[str, Any] = summary
        failed = [name for name, status in statuses.items() if status not in (PASS, SKIP)]
        typer.echo(format_summary(experiment.name, statuses))
        if failed:
            raise AcceptanceFailed(", ".join(failed))
        return
    typer.echo(format_summary(experiment.name, summary))


@app.command("sweep")
@catch_pricetail_exceptions
def sweep(
    config: Path = typer.Option(..., "--config", "-c", help="Experiment config file with a [sweep] section"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory for the CSV artifacts"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1,
                                       help="Worker processes (default: PRICETAIL_JOBS or 1)"),
) -> None:
    """
    Run each instance of the swept parameter and collate one row per instance
    """
    rows = processor.sweep(config_file=config, out_dir=resolve_out(out), jobs=resolve_jobs(jobs))
    names: List[str] = []
    for row in rows:
        names += [name for name in row if name not in names]
    table = reorder_data([{key: format_value(value) for key, value in row.items()} for row in rows], names)
    typer.echo(tabulate(table, headers={name: name for name in names}))
    typer.echo(f"{len(rows)} instance(s) succeeded")


@app.command("verify")
@catch_pricetail_exceptions
def verify(
    config: Optional[Path] = typer.Option(None, "--config", "-c",
                                          help="Verify config selecting criteria and scale (default: all, full)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory for the CSV artifacts"),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1,
                                       help="Worker processes (default: PRICETAIL_JOBS or 1)"),
    baseline: Optional[Path] = typer.Option(None, "--baseline", "-b",
                                            help="Directory with stored acceptance CSVs to compare with"),
) -> None:
    """
    Run the acceptance suite and print the PASS/FAIL table
    """
    results = processor.verify(config_file=config, out_dir=resolve_out(out), jobs=resolve_jobs(jobs),
                               baseline=baseline)
    check_results(results)


@app.command("validate")
@catch_pricetail_exceptions
def validate(
    config: Path = typer.Option(..., "--config", "-c", help="Experiment config file"),
) -> None:
    """
    Validate a config without running it
    """
    validate_dict = processor.validate(config_file=config)
    validation_messages = format_validation_messages(validate_dict)

    if validate_dict["error"]:
        raise ConfigFailedValidation(str(config), validation_messages)

    if validation_messages:
        typer.echo(validation_messages)
    typer.echo(f"Config '{config}' is valid")
