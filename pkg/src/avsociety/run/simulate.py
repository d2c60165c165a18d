#!/usr/bin/env python3

"""Run a single simulation. This is `av-society run`."""

import os
from pathlib import Path
from typing import Any

import typer
from rich.console import Console

from avsociety.config import ConfigurationError
from avsociety.experiments.sweep import run_simulation
from avsociety.run.utils.save import save_run
from avsociety.society.config import load_settings
from avsociety.utils.log import add_file_handler, logger

DEFAULT_OUTPUT = Path(os.getenv("AVSOC_OUTPUT_DIR", "avsoc-output"))
console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)
app = typer.Typer(rich_markup_mode="rich", add_completion=False)
_HELP_TEXT = """Run one seeded simulation and save its collisions.

[not dim]
World settings come from the config file; every flag below overrides one of them.
Writes [bold green]raw/run-<seed>.csv[/bold green] and [bold green]run-<seed>.json[/bold green] to the output directory,
plus the society and appraisal traces and a world snapshot with [bold green]--trace[/bold green].
[/not dim]
"""


# fmt: off
@app.command(help=_HELP_TEXT)
def main(
    config_spec: Path = typer.Option("default", "-c", "--config", help="Path to a config file", rich_help_panel="Basic"),
    seed: int = typer.Option(0, "-s", "--seed", help="Random seed", rich_help_panel="Basic"),
    ticks: int | None = typer.Option(None, "-t", "--ticks", help="Number of ticks (default: world.ticks_per_run)", rich_help_panel="Basic"),
    output: Path = typer.Option(DEFAULT_OUTPUT, "-o", "--output", help="Output directory (env: AVSOC_OUTPUT_DIR)", rich_help_panel="Basic"),
    trace: bool = typer.Option(False, "--trace", help="Write per-agent trace logs and a final snapshot", rich_help_panel="Basic"),
    mode: str | None = typer.Option(None, "-m", "--mode", help="random-walk or norms", rich_help_panel="World"),
    num_avs: int | None = typer.Option(None, "-n", "--num-avs", help="Number of vehicles [1-30]", rich_help_panel="World"),
    vehicle_ratio: str | None = typer.Option(None, "--vehicle-ratio", help="Trucks to cars: 2:1, 3:1 or 4:1", rich_help_panel="World"),
    min_velocity: float | None = typer.Option(None, "--min-velocity", rich_help_panel="World"),
    max_velocity: float | None = typer.Option(None, "--max-velocity", rich_help_panel="World"),
    acceleration_rate: float | None = typer.Option(None, "--acceleration-rate", rich_help_panel="World"),
    deceleration_rate: float | None = typer.Option(None, "--deceleration-rate", rich_help_panel="World"),
    safety_distance: int | None = typer.Option(None, "--safety-distance", rich_help_panel="World"),
    sonar_range: int | None = typer.Option(None, "--sonar-range", rich_help_panel="World"),
    condition: str | None = typer.Option(None, "--condition", help="bright or rainy", rich_help_panel="World"),
    li: float | None = typer.Option(None, "--li", help="Likelihood slider", rich_help_panel="Fear"),
    ud: float | None = typer.Option(None, "--ud", help="Undesirability slider", rich_help_panel="Fear"),
    ig: float | None = typer.Option(None, "--ig", help="Global intensity slider", rich_help_panel="Fear"),
    dynamic_appraisal: bool | None = typer.Option(None, "--dynamic-appraisal/--slider-appraisal", help="Appraise fear from the belief instead of the sliders", rich_help_panel="Fear"),
) -> Any:
    # fmt: on
    overrides = {
        key: value
        for key, value in {
            "mode": mode,
            "num_avs": num_avs,
            "vehicle_ratio": vehicle_ratio,
            "min_velocity": min_velocity,
            "max_velocity": max_velocity,
            "acceleration_rate": acceleration_rate,
            "deceleration_rate": deceleration_rate,
            "safety_distance": safety_distance,
            "sonar_range": sonar_range,
            "condition": condition,
            "li": li,
            "ud": ud,
            "ig": ig,
            "dynamic_appraisal": dynamic_appraisal,
        }.items()
        if value is not None
    }
    try:
        cfg, settings = load_settings(config_spec)
        cfg = cfg.replace(**overrides)
        if ticks is not None and ticks < 0:
            raise ConfigurationError("ticks", f"{ticks} must not be negative")
    except (ConfigurationError, FileNotFoundError) as e:
        err_console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(1)

    output.mkdir(parents=True, exist_ok=True)
    add_file_handler(output / "avsociety.log", print_path=False)
    logger.info(f"Running {cfg.num_avs} vehicles in {cfg.mode} mode, seed {seed}")
    result = run_simulation(cfg, ticks, seed, settings, trace=trace)
    save_run(result, cfg, output, settings=settings, print_fct=logger.info)
    console.print(f"Total collisions: {result.total_collisions}")
    return result


if __name__ == "__main__":
    app()
