"""Experiment sweeps: repeated seeded runs, summaries, mode comparison and the sonar/safety matrix."""

from avsociety.experiments.design import (
    SET_IDS,
    ExperimentRow,
    ExperimentSpec,
    UnknownSetError,
    load_experiment_spec,
    resolve_set_names,
)
from avsociety.experiments.report import (
    MATRIX_SOURCES,
    SPEED_EFFECT_SOURCES,
    ComparisonReport,
    DensityTrend,
    ShapeError,
    SonarSafetyMatrix,
    compare_modes,
    density_trend,
    sonar_safety_matrix,
    speed_effect,
)
from avsociety.experiments.sweep import (
    RunResult,
    SummaryRow,
    SweepError,
    SweepSummary,
    run_experiment_set,
    run_simulation,
    run_sweep,
    summaries_from_raw,
)

__all__ = [
    "MATRIX_SOURCES",
    "SET_IDS",
    "SPEED_EFFECT_SOURCES",
    "ComparisonReport",
    "DensityTrend",
    "ExperimentRow",
    "ExperimentSpec",
    "RunResult",
    "ShapeError",
    "SonarSafetyMatrix",
    "SummaryRow",
    "SweepError",
    "SweepSummary",
    "UnknownSetError",
    "compare_modes",
    "density_trend",
    "load_experiment_spec",
    "resolve_set_names",
    "run_experiment_set",
    "run_simulation",
    "run_sweep",
    "sonar_safety_matrix",
    "speed_effect",
    "summaries_from_raw",
]
