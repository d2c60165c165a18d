#!/usr/bin/env python3

"""Run experiment sets. This is `av-society sweep`."""

import os
import time
from pathlib import Path

import typer
from rich.console import Console
from rich.live import Live

from avsociety.config import ConfigurationError
from avsociety.experiments.design import UnknownSetError, load_experiment_spec, resolve_set_names
from avsociety.experiments.progress import SweepProgressManager
from avsociety.experiments.results import write_sweep
from avsociety.experiments.sweep import SweepError, run_sweep
from avsociety.society.config import load_settings
from avsociety.utils.log import add_file_handler, logger

DEFAULT_OUTPUT = Path(os.getenv("AVSOC_OUTPUT_DIR", "avsoc-output"))
console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)
app = typer.Typer(rich_markup_mode="rich", add_completion=False)
_HELP_TEXT = """Sweep experiment sets over AV counts with repeated seeded runs.

[not dim]
Sets are [bold green]a1[/bold green]..[bold green]a5[/bold green] (random walk), [bold green]b1[/bold green]..[bold green]b5[/bold green] (norm-driven), [bold green]all[/bold green], a comma list or a YAML file.
Sets sweeping several sonar ranges are split into one sweep per range.
Writes [bold green]raw/<set>-sonar<n>.csv[/bold green] and [bold green]summary/<set>-sonar<n>.csv[/bold green].
[/not dim]
"""


# fmt: off
@app.command(help=_HELP_TEXT)
def main(
    set_spec: str = typer.Option("all", "--set", help="Experiment set(s): a1..b5, all, comma list or YAML path", rich_help_panel="Basic"),
    output: Path = typer.Option(DEFAULT_OUTPUT, "-o", "--output", help="Output directory (env: AVSOC_OUTPUT_DIR)", rich_help_panel="Basic"),
    workers: int = typer.Option(1, "-w", "--workers", help="Number of worker processes", rich_help_panel="Basic"),
    repetitions: int | None = typer.Option(None, "-r", "--repetitions", help="Runs per experiment row (default: from the set)", rich_help_panel="Overrides"),
    ticks: int | None = typer.Option(None, "-t", "--ticks", help="Ticks per run (default: from the set)", rich_help_panel="Overrides"),
    base_seed: int | None = typer.Option(None, "--base-seed", help="Seed of the first run (default: from the set)", rich_help_panel="Overrides"),
    config_spec: Path = typer.Option("default", "-c", "--config", help="Config file with world and fear defaults", rich_help_panel="Advanced"),
) -> None:
    # fmt: on
    try:
        base, settings = load_settings(config_spec)
        specs = [
            load_experiment_spec(name).with_overrides(repetitions=repetitions, ticks=ticks, base_seed=base_seed)
            for name in resolve_set_names(set_spec)
        ]
    except (UnknownSetError, ConfigurationError, FileNotFoundError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(1)
    if not specs:
        err_console.print("[bold red]Error:[/bold red] no experiment set selected")
        raise typer.Exit(1)

    output.mkdir(parents=True, exist_ok=True)
    add_file_handler(output / "avsociety.log", print_path=False)
    sub_sweeps = [sub for spec in specs for sub in spec.sub_sweeps()]
    num_runs = sum(len(sub.rows) * sub.repetitions for sub in sub_sweeps)
    logger.info(f"Running {len(sub_sweeps)} sweeps, {num_runs} runs on {workers} worker(s)")
    progress_manager = SweepProgressManager(num_runs, output / f"sweep_progress_{time.time()}.yaml")

    written = []
    try:
        with Live(progress_manager.render_group, refresh_per_second=4, console=err_console):
            for sub in sub_sweeps:
                summary = run_sweep(sub, settings, base=base, workers=workers, progress_manager=progress_manager)
                written.extend(write_sweep(summary, output))
    except (SweepError, ConfigurationError) as e:
        err_console.print(f"[bold red]Sweep failed:[/bold red] {e}")
        raise typer.Exit(1)

    console.print(f"{progress_manager.n_completed} runs, {progress_manager.total_collisions} collisions in total")
    for path in written:
        console.print(f"  {path}")


if __name__ == "__main__":
    app()
