#!/usr/bin/env python3

"""Evaluate the undesirability system on the hand-traced validation rows."""

from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table

from avsociety.config import ConfigurationError
from avsociety.fuzzy.core import CalibrationError, IntensityScale
from avsociety.fuzzy.io import save_fis
from avsociety.fuzzy.rulebases import build_ig_fis, build_likelihood_fis, build_undesirability_fis
from avsociety.fuzzy.validation import VALUE_TOLERANCE, calibrate_undesirability, validate_undesirability
from avsociety.society.config import load_settings
from avsociety.utils.log import logger

console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)
app = typer.Typer(rich_markup_mode="rich", add_completion=False)
_HELP_TEXT = f"""Check the undesirability inference against the 14 validation rows.

[not dim]
A row passes when its output carries the expected label and lies within ±{VALUE_TOLERANCE} of the expected value.
The exit status is 0 only if every row passes.
[/not dim]
"""


# fmt: off
@app.command(help=_HELP_TEXT)
def main(
    config_spec: Path = typer.Option("default", "-c", "--config", help="Config file with the fuzzy peaks", rich_help_panel="Basic"),
    published: bool = typer.Option(False, "--published", help="Use the printed undesirability table instead of the validated revision", rich_help_panel="Basic"),
    calibrate: bool = typer.Option(False, "--calibrate", help="Search peak positions before validating", rich_help_panel="Advanced"),
    export: Path | None = typer.Option(None, "--export", help="Directory to write the three rule bases to", rich_help_panel="Advanced"),
) -> None:
    # fmt: on
    revision = "published" if published else "validated"
    try:
        _, settings = load_settings(config_spec)
        scale = IntensityScale().with_peaks(settings.fuzzy.peaks)
        if calibrate:
            peaks = calibrate_undesirability(scale, revision=revision)
            logger.info(f"Calibrated peaks: {peaks}")
            scale = scale.with_peaks(peaks)
    except CalibrationError as e:
        err_console.print(f"[bold red]Calibration failed:[/bold red] {e}")
        for value, expected, got in e.violations:
            err_console.print(f"  {value}: expected {expected}, got {got}")
        raise typer.Exit(1)
    except (ConfigurationError, FileNotFoundError, ValueError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(1)

    fis = build_undesirability_fis(scale, revision=revision)
    report = validate_undesirability(fis)

    table = Table(title=f"Undesirability ({revision} rules)")
    for column in ("#", "ImpGoal", "AchGoal", "expected", "actual", "label", "pass"):
        table.add_column(column, justify="right" if column != "label" else "left")
    for r in report.results:
        table.add_row(
            str(r.case.number),
            f"{r.case.imp_goal:g} ({r.case.imp_goal_token})",
            f"{r.case.ach_goal:g} ({r.case.ach_goal_token})",
            f"{r.case.expected:g} ({r.case.expected_token})",
            f"{r.actual:.3f}",
            r.actual_token,
            "[green]ok[/green]" if r.passed else "[red]FAIL[/red]",
        )
    console.print(table)

    if export is not None:
        for system in (fis, build_likelihood_fis(scale), build_ig_fis(scale)):
            save_fis(system, export / f"{system.name}.fis.txt")
        logger.info(f"Rule bases written to '{export}'")

    if not report.passed:
        console.print(f"[bold red]{len(report.failures)} of {len(report.results)} rows failed[/bold red]")
        raise typer.Exit(1)
    console.print(f"[bold green]All {len(report.results)} rows passed[/bold green]")


if __name__ == "__main__":
    app()
