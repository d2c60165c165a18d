import dataclasses
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pandas as pd

from avsociety import __version__
from avsociety.experiments.sweep import RunResult
from avsociety.society.config import SimulationSettings, WorldConfig


def _asdict(obj: Any) -> dict:
    """Convert config objects to dicts."""
    if dataclasses.is_dataclass(obj):
        return dataclasses.asdict(obj)  # type: ignore[arg-type]
    return obj  # let's try our luck


def per_tick_frame(result: RunResult) -> pd.DataFrame:
    collisions = pd.Series(result.per_tick, dtype="int64")
    return pd.DataFrame(
        {"tick": range(len(result.per_tick)), "collisions": collisions, "cumulative": collisions.cumsum()},
        columns=["tick", "collisions", "cumulative"],
    )


def save_run(
    result: RunResult,
    cfg: WorldConfig,
    output_dir: Path,
    *,
    settings: SimulationSettings | None = None,
    print_path: bool = True,
    exit_status: str | None = "completed",
    extra_info: dict | None = None,
    print_fct: Callable = print,
    **kwargs,
) -> list[Path]:
    """Save the per-tick collisions of a run, its metadata and, if traced, the trace files.

    Args:
        result: The finished run.
        cfg: World configuration the run used.
        output_dir: Directory receiving ``raw/``, ``trace/`` and ``run-<seed>.json``.
        print_path: Whether to report the written paths.
        exit_status: Recorded in the metadata.
        extra_info: Merged into the info dict.
        **kwargs: Additional top-level entries of the metadata.
    """
    output_dir = Path(output_dir)
    seed = result.seed
    written = []

    raw = output_dir / "raw" / f"run-{seed}.csv"
    raw.parent.mkdir(parents=True, exist_ok=True)
    per_tick_frame(result).to_csv(raw, index=False)
    written.append(raw)

    if result.trace_rows or result.snapshot:
        trace_dir = output_dir / "trace"
        trace_dir.mkdir(parents=True, exist_ok=True)
        society = trace_dir / f"society-{seed}.csv"
        pd.DataFrame.from_records(
            list(result.trace_rows),
            columns=["tick", "agent_id", "kind", "x", "y", "velocity", "mode", "fw", "action", "collisions_this_tick"],
        ).to_csv(society, index=False)
        appraisal = trace_dir / f"appraisal-{seed}.csv"
        pd.DataFrame.from_records(list(result.appraisal_rows)).to_csv(appraisal, index=False)
        snapshot = trace_dir / f"snapshot-{seed}.txt"
        snapshot.write_text(result.snapshot)
        written.extend([society, appraisal, snapshot])

    data = {
        "info": {
            "exit_status": exit_status,
            "total_collisions": result.total_collisions,
            "seed": seed,
            "ticks": result.ticks,
            "config": {"world": _asdict(cfg), "settings": _asdict(settings) if settings is not None else None},
            "avsoc_version": __version__,
        },
        "result_format": "av-society-run-1",
    } | kwargs
    if extra_info:
        data["info"].update(extra_info)
    metadata = output_dir / f"run-{seed}.json"
    metadata.write_text(json.dumps(data, indent=2, default=str))
    written.append(metadata)

    if print_path:
        for path in written:
            print_fct(f"Saved run output to '{path}'")
    return written
