"""Live view of a sweep: a spinner per active run, an overall bar with the running collision
total, and a per-sweep table of finished runs and collisions.
"""

import collections
import time
from dataclasses import dataclass, field
from datetime import timedelta
from pathlib import Path
from threading import Lock

import yaml
from rich.console import Group
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TaskID,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)
from rich.table import Table

FAILED = "failed"


def _fit(s: str, width: int, *, keep_end: bool = False) -> str:
    """Pad or cut ``s`` to ``width`` characters."""
    if len(s) > width:
        s = "..." + s[-width + 3 :] if keep_end else s[: width - 3] + "..."
    return f"{s:<{width}}"


def sweep_of(run_id: str) -> str:
    """``b1-sonar2/e3/r6`` belongs to sweep ``b1-sonar2``."""
    return run_id.split("/", 1)[0]


@dataclass
class SweepTally:
    runs: int = 0
    failed: int = 0
    collisions: int = 0
    recent: list[str] = field(default_factory=list)

    @property
    def mean(self) -> float | None:
        completed = self.runs - self.failed
        return self.collisions / completed if completed else None


class SweepProgressManager:
    def __init__(self, num_runs: int, yaml_report_path: Path | None = None):
        """Progress UI for one or more sweeps.

        Args:
            num_runs: Number of simulation runs (rows times repetitions, all sub-sweeps)
            yaml_report_path: Where to keep a yaml record of finished runs per sweep
        """
        self._lock = Lock()
        self._start_time = time.time()
        self._total_runs = num_runs
        self._active: dict[str, TaskID] = {}
        self._tallies: dict[str, SweepTally] = collections.defaultdict(SweepTally)
        self._failures: dict[str, str] = {}
        self._overall = Progress(
            SpinnerColumn(spinner_name="dots2"),
            TextColumn("[progress.description]{task.description} ({task.fields[collisions]} collisions)"),
            BarColumn(),
            MofNCompleteColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            TextColumn("[cyan]{task.fields[eta]}[/cyan]"),
        )
        self._runs = Progress(
            SpinnerColumn(spinner_name="dots2"),
            TextColumn("{task.fields[run_id]}"),
            TextColumn("[dim]{task.fields[detail]}[/dim]"),
            TimeElapsedColumn(),
        )
        self._overall_task = self._overall.add_task("[cyan]Overall", total=num_runs, collisions=0, eta="")
        self.render_group = Group(Table(), self._runs, self._overall)
        self._yaml_report_path = yaml_report_path

    @property
    def n_completed(self) -> int:
        return sum(tally.runs for tally in self._tallies.values())

    @property
    def total_collisions(self) -> int:
        return sum(tally.collisions for tally in self._tallies.values())

    @property
    def n_active(self) -> int:
        return len(self._active)

    def tally(self, sweep: str) -> SweepTally:
        return self._tallies[sweep]

    def _eta(self) -> str:
        done = self.n_completed
        if not done:
            return ""
        remaining = (time.time() - self._start_time) / done * (self._total_runs - done)
        return f"eta: {timedelta(seconds=int(remaining))}"

    def _refresh_table(self) -> None:
        t = Table()
        t.add_column("Sweep")
        t.add_column("Runs", justify="right", style="bold cyan")
        t.add_column("Collisions", justify="right")
        t.add_column("Mean", justify="right")
        t.add_column("Latest runs")
        for name, tally in self._tallies.items():
            mean = "-" if tally.mean is None else f"{tally.mean:.2f}"
            runs = f"{tally.runs} ([red]{tally.failed} failed[/red])" if tally.failed else str(tally.runs)
            t.add_row(name, runs, str(tally.collisions), mean, _fit(", ".join(reversed(tally.recent)), 40))
        # rich tables are immutable once rendered
        self.render_group.renderables[0] = t

    def on_run_start(self, run_id: str, detail: str = "") -> None:
        with self._lock:
            self._active[run_id] = self._runs.add_task(
                description=run_id, total=None, run_id=_fit(run_id, 25, keep_end=True), detail=detail
            )

    def on_run_end(self, run_id: str, collisions: int = 0, *, failure: str | None = None) -> None:
        with self._lock:
            tally = self._tallies[sweep_of(run_id)]
            tally.runs += 1
            tally.recent = [*tally.recent[-4:], run_id.rsplit("/", 1)[-1] if "/" in run_id else run_id]
            if failure is None:
                tally.collisions += collisions
            else:
                tally.failed += 1
                self._failures[run_id] = failure
            task = self._active.pop(run_id, None)
            if task is not None:
                self._runs.remove_task(task)
            self._overall.update(self._overall_task, advance=1, collisions=self.total_collisions, eta=self._eta())
            self._refresh_table()
        if self._yaml_report_path is not None:
            self._save_yaml(self._yaml_report_path)

    def on_uncaught_exception(self, run_id: str, exception: Exception) -> None:
        self.on_run_end(run_id, failure=f"{type(exception).__name__}: {exception}")

    def overview(self) -> dict:
        with self._lock:
            return {
                "sweeps": {
                    name: {"runs": tally.runs, "failed": tally.failed, "collisions": tally.collisions}
                    for name, tally in self._tallies.items()
                },
                "failures": dict(self._failures),
                "total_collisions": sum(tally.collisions for tally in self._tallies.values()),
            }

    def _save_yaml(self, path: Path) -> None:
        path.write_text(yaml.safe_dump(self.overview(), sort_keys=False))
