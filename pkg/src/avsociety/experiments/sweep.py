"""Single runs and repeated sweeps over an experiment set."""

import concurrent.futures
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import pandas as pd

from avsociety.config import ConfigurationError
from avsociety.experiments.design import ExperimentSpec
from avsociety.experiments.progress import SweepProgressManager
from avsociety.society.config import SimulationSettings, WorldConfig
from avsociety.society.world import export_snapshot, spawn_society, step
from avsociety.utils.log import logger

RAW_COLUMNS = [
    "set",
    "experiment_no",
    "num_avs",
    "mode",
    "sonar_range",
    "safety_distance",
    "rep",
    "seed",
    "ticks",
    "collisions",
]
SUMMARY_COLUMNS = ["set", "experiment_no", "num_avs", "mode", "sonar_range", "safety_distance", "runs", "mean", "stdev"]


class SweepError(RuntimeError):
    """A run of a sweep failed; the message names the experiment row."""


@dataclass(frozen=True)
class RunResult:
    seed: int
    ticks: int
    total_collisions: int
    per_tick: tuple[int, ...]
    trace_rows: tuple[dict, ...] = ()
    appraisal_rows: tuple[dict, ...] = ()
    snapshot: str = ""
    """World state after the last tick (traced runs only)."""


def run_simulation(
    cfg: WorldConfig,
    ticks: int | None = None,
    seed: int = 0,
    settings: SimulationSettings | None = None,
    *,
    trace: bool = False,
    on_tick: Callable[[int, int], None] | None = None,
) -> RunResult:
    """Spawn a society and step it ``ticks`` times (``cfg.ticks_per_run`` by default)."""
    ticks = cfg.ticks_per_run if ticks is None else ticks
    if ticks < 0:
        raise ConfigurationError("ticks", f"{ticks} must not be negative")
    world = spawn_society(cfg, seed, settings, trace=trace)
    per_tick = []
    trace_rows: list[dict] = []
    appraisal_rows: list[dict] = []
    for _ in range(ticks):
        report = step(world)
        per_tick.append(report.collisions)
        if trace:
            trace_rows.extend(report.trace_rows(cfg.mode))
            appraisal_rows.extend(report.appraisal_rows())
        if on_tick is not None:
            on_tick(report.tick, world.total_collisions)
    return RunResult(
        seed=seed,
        ticks=ticks,
        total_collisions=world.total_collisions,
        per_tick=tuple(per_tick),
        trace_rows=tuple(trace_rows),
        appraisal_rows=tuple(appraisal_rows),
        snapshot=export_snapshot(world) if trace else "",
    )


def _run_task(cfg: WorldConfig, ticks: int, seed: int, settings: SimulationSettings) -> int:
    return run_simulation(cfg, ticks, seed, settings).total_collisions


@dataclass(frozen=True)
class SummaryRow:
    experiment_no: int
    num_avs: int
    mode: str
    sonar_range: int
    safety_distance: int
    totals: tuple[int, ...]
    seeds: tuple[int, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.totals))

    @property
    def stdev(self) -> float:
        """Sample standard deviation, NaN for a single run."""
        if len(self.totals) < 2:
            return math.nan
        return float(np.std(self.totals, ddof=1))


@dataclass(frozen=True)
class SweepSummary:
    set_id: str
    mode: str
    sonar_range: int
    ticks: int
    rows: tuple[SummaryRow, ...]

    @property
    def name(self) -> str:
        return f"{self.set_id.lower()}-sonar{self.sonar_range}"

    def means(self) -> dict[int, float]:
        return {row.num_avs: row.mean for row in self.rows}

    def verify(self, rel_tol: float = 1e-9) -> bool:
        """Means and deviations agree with a plain recomputation from the raw totals."""
        for row in self.rows:
            n = len(row.totals)
            mean = math.fsum(row.totals) / n
            if not math.isclose(row.mean, mean, rel_tol=rel_tol, abs_tol=1e-12):
                return False
            if n > 1:
                stdev = math.sqrt(math.fsum((x - mean) ** 2 for x in row.totals) / (n - 1))
                if not math.isclose(row.stdev, stdev, rel_tol=rel_tol, abs_tol=1e-12):
                    return False
        return True

    def raw_frame(self) -> pd.DataFrame:
        records = [
            {
                "set": self.set_id,
                "experiment_no": row.experiment_no,
                "num_avs": row.num_avs,
                "mode": row.mode,
                "sonar_range": row.sonar_range,
                "safety_distance": row.safety_distance,
                "rep": rep,
                "seed": seed,
                "ticks": self.ticks,
                "collisions": total,
            }
            for row in self.rows
            for rep, (seed, total) in enumerate(zip(row.seeds, row.totals))
        ]
        return pd.DataFrame.from_records(records, columns=RAW_COLUMNS)

    def summary_frame(self) -> pd.DataFrame:
        records = [
            {
                "set": self.set_id,
                "experiment_no": row.experiment_no,
                "num_avs": row.num_avs,
                "mode": row.mode,
                "sonar_range": row.sonar_range,
                "safety_distance": row.safety_distance,
                "runs": len(row.totals),
                "mean": row.mean,
                "stdev": row.stdev,
            }
            for row in self.rows
        ]
        return pd.DataFrame.from_records(records, columns=SUMMARY_COLUMNS)


def summaries_from_raw(frame: pd.DataFrame) -> list[SweepSummary]:
    """Rebuild summaries from raw rows, one per (set, sonar range)."""
    missing = [column for column in RAW_COLUMNS if column not in frame.columns]
    if missing:
        raise ValueError(f"Raw results lack columns {missing}")
    summaries = []
    for (set_id, sonar), group in frame.groupby(["set", "sonar_range"], sort=True):
        rows = []
        for experiment_no, runs in group.sort_values(["experiment_no", "rep"]).groupby("experiment_no", sort=True):
            first = runs.iloc[0]
            rows.append(
                SummaryRow(
                    experiment_no=int(experiment_no),
                    num_avs=int(first["num_avs"]),
                    mode=str(first["mode"]),
                    sonar_range=int(sonar),
                    safety_distance=int(first["safety_distance"]),
                    totals=tuple(int(x) for x in runs["collisions"]),
                    seeds=tuple(int(x) for x in runs["seed"]),
                )
            )
        summaries.append(
            SweepSummary(str(set_id), rows[0].mode, int(sonar), int(group["ticks"].iloc[0]), tuple(rows))
        )
    return summaries


def run_sweep(
    spec: ExperimentSpec,
    settings: SimulationSettings | None = None,
    *,
    base: WorldConfig | None = None,
    workers: int = 1,
    progress_manager: SweepProgressManager | None = None,
) -> SweepSummary:
    """All rows times all repetitions of a single-sonar experiment set.

    Results are merged by (row, rep), so the summary does not depend on ``workers``.
    """
    if len(spec.sonar_values) != 1:
        raise ValueError(f"{spec.set_id} sweeps sonar ranges {spec.sonar_values}; run each of spec.sub_sweeps()")
    settings = settings or SimulationSettings()
    base = base or WorldConfig()
    configs = []
    for row in spec.rows:
        try:
            configs.append(row.world_config(base, spec.mode, spec.ticks))
        except ConfigurationError as e:
            raise SweepError(f"{spec.name} experiment {row.experiment_no}: {e}") from e

    tasks = {
        (row_index, rep): (configs[row_index], spec.seed(row_index, rep))
        for row_index in range(len(spec.rows))
        for rep in range(spec.repetitions)
    }
    logger.info(f"Sweep {spec.name}: {len(spec.rows)} rows x {spec.repetitions} repetitions, {spec.ticks} ticks")

    def run_id(key: tuple[int, int]) -> str:
        return f"{spec.name}/e{spec.rows[key[0]].experiment_no}/r{key[1]}"

    def on_start(key: tuple[int, int]) -> None:
        if progress_manager is not None:
            cfg, seed = tasks[key]
            progress_manager.on_run_start(run_id(key), f"{cfg.num_avs} AVs, seed {seed}")

    totals: dict[tuple[int, int], int] = {}

    def on_done(key: tuple[int, int], total: int) -> None:
        totals[key] = total
        if progress_manager is not None:
            progress_manager.on_run_end(run_id(key), total)

    def on_failure(key: tuple[int, int], e: Exception) -> SweepError:
        if progress_manager is not None:
            progress_manager.on_uncaught_exception(run_id(key), e)
        row = spec.rows[key[0]]
        return SweepError(f"{spec.name} experiment {row.experiment_no} rep {key[1]}: {e}")

    if workers <= 1:
        for key, (cfg, seed) in tasks.items():
            on_start(key)
            try:
                on_done(key, _run_task(cfg, spec.ticks, seed, settings))
            except Exception as e:
                raise on_failure(key, e) from e
    else:
        queue = iter(tasks.items())
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures: dict[concurrent.futures.Future, tuple[int, int]] = {}

            def submit_next() -> None:
                # at most `workers` runs in flight
                for key, (cfg, seed) in queue:
                    on_start(key)
                    futures[executor.submit(_run_task, cfg, spec.ticks, seed, settings)] = key
                    return

            def process_futures() -> None:
                while futures:
                    done, _ = concurrent.futures.wait(futures, return_when=concurrent.futures.FIRST_COMPLETED)
                    for future in sorted(done, key=futures.__getitem__):
                        key = futures.pop(future)
                        try:
                            total = future.result()
                        except concurrent.futures.CancelledError:
                            continue
                        except Exception as e:
                            for pending in futures:
                                pending.cancel()
                            raise on_failure(key, e) from e
                        on_done(key, total)
                        submit_next()

            for _ in range(workers):
                submit_next()
            try:
                process_futures()
            except KeyboardInterrupt:
                logger.info("Cancelling all pending runs. Press ^C again to exit immediately.")
                for future in futures:
                    future.cancel()
                raise

    rows = []
    for row_index, (row, cfg) in enumerate(zip(spec.rows, configs)):
        keys = [(row_index, rep) for rep in range(spec.repetitions)]
        rows.append(
            SummaryRow(
                experiment_no=row.experiment_no,
                num_avs=cfg.num_avs,
                mode=cfg.mode,
                sonar_range=cfg.sonar_range,
                safety_distance=cfg.safety_distance,
                totals=tuple(totals[key] for key in keys),
                seeds=tuple(tasks[key][1] for key in keys),
            )
        )
    summary = SweepSummary(spec.set_id, spec.mode, spec.sonar_values[0], spec.ticks, tuple(rows))
    for row in summary.rows:
        logger.info(f"{summary.name} {row.num_avs} AVs: mean {row.mean:.3f}, stdev {row.stdev:.3f}")
    return summary


def run_experiment_set(
    spec: ExperimentSpec,
    settings: SimulationSettings | None = None,
    *,
    base: WorldConfig | None = None,
    workers: int = 1,
    progress_manager: SweepProgressManager | None = None,
) -> list[SweepSummary]:
    """Every sonar sub-sweep of a set, in ascending sonar order."""
    return [
        run_sweep(sub, settings, base=base, workers=workers, progress_manager=progress_manager)
        for sub in spec.sub_sweeps()
    ]
