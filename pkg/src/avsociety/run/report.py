#!/usr/bin/env python3

"""Build summaries, mode comparisons and the sonar/safety matrix from raw results.
This is `av-society report`.
"""

import os
from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table

from avsociety.experiments.design import UnknownSetError
from avsociety.experiments.report import ShapeError
from avsociety.experiments.results import SET_NUMBERS, MissingResultsError, write_report
from avsociety.utils.log import add_file_handler

DEFAULT_OUTPUT = Path(os.getenv("AVSOC_OUTPUT_DIR", "avsoc-output"))
console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)
app = typer.Typer(rich_markup_mode="rich", add_completion=False)
_HELP_TEXT = """Compare random-walk and norm-driven results of finished sweeps.

[not dim]
Reads [bold green]raw/*.csv[/bold green] from the output directory and writes [bold green]summary/[/bold green] and [bold green]report/[/bold green].
The exit status is 0 only if the norm-driven society collides less for every AV count,
random-walk collisions grow with the AV count, the slow set 3 collides less than set 1
and the sonar/safety matrix (built when all five sets are present) holds.
[/not dim]
"""


def _parse_sets(value: str) -> list[int]:
    try:
        numbers = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"{value!r} is not a comma list of set numbers")
    unknown = [n for n in numbers if n not in SET_NUMBERS]
    if unknown or not numbers:
        raise typer.BadParameter(f"set numbers must be among {SET_NUMBERS}, got {value!r}")
    return numbers


# fmt: off
@app.command(help=_HELP_TEXT)
def main(
    output: Path = typer.Option(DEFAULT_OUTPUT, "-o", "--output", help="Output directory holding raw/ (env: AVSOC_OUTPUT_DIR)", rich_help_panel="Basic"),
    sets: str = typer.Option("1,2,3,4,5", "--sets", help="Set numbers to compare", rich_help_panel="Basic"),
    trend_dirs: list[Path] = typer.Option([], "--trend-dir", help="Output directory of the same random-walk sweeps under another base seed; repeat for more density-trend votes", rich_help_panel="Advanced"),
) -> None:
    # fmt: on
    set_numbers = _parse_sets(sets)
    if output.is_dir():
        add_file_handler(output / "avsociety.log", print_path=False)
    try:
        outcome = write_report(output, set_numbers, trend_dirs=trend_dirs)
    except MissingResultsError as e:
        err_console.print("[bold red]Missing raw results; run the sweeps first:[/bold red]")
        for path in e.missing:
            err_console.print(f"  {path}", soft_wrap=True)
        raise typer.Exit(1)
    except (ShapeError, UnknownSetError, ValueError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(1)

    table = Table(title="Random walk vs. norms")
    for column in ("comparison", "AVs", "random-walk", "norms", "ratio", "pass"):
        table.add_column(column, justify="left" if column == "comparison" else "right")
    for label, report in outcome.comparisons.items():
        for row in report.rows:
            table.add_row(
                label,
                str(row.num_avs),
                f"{row.mean_a:.2f}",
                f"{row.mean_b:.2f}",
                f"{row.ratio:.3f}",
                "[green]ok[/green]" if row.passed else "[red]FAIL[/red]",
            )
    console.print(table)
    for label, trend in outcome.trends.items():
        votes = f"{sum(trend.increasing)}/{len(trend.votes)} base seeds"
        console.print(f"Density trend {label}: {votes} increasing, {'ok' if trend.passed else 'FAIL'}")
    if outcome.speed is not None:
        flags = ", ".join(f"{row.num_avs}: {'ok' if row.passed else 'FAIL'}" for row in outcome.speed.rows)
        console.print(f"Speed effect (B3 vs. B1): {flags}")
    if outcome.matrix is not None:
        flags = ", ".join(f"{n}: {'ok' if flag else 'FAIL'}" for n, flag in outcome.matrix.flags().items())
        console.print(f"Sonar/safety matrix: {flags}")

    if not outcome.passed:
        console.print("[bold red]Report checks failed[/bold red]")
        raise typer.Exit(1)
    console.print("[bold green]All report checks passed[/bold green]")


if __name__ == "__main__":
    app()
