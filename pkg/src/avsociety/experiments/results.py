"""Result files under an output directory.

    raw/{set}-sonar{n}.csv        one line per run
    summary/{set}-sonar{n}.csv    mean and sample stdev per experiment row
    report/comparison-set{k}-sonar{n}.csv
    report/plot-set{k}-sonar{n}.csv
    report/trend-set{k}-sonar{n}.csv   one line per base seed
    report/speed-effect.csv
    report/matrix.csv, report/matrix-flags.csv
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from avsociety.experiments.design import load_experiment_spec
from avsociety.experiments.report import (
    MATRIX_SOURCES,
    SPEED_EFFECT_SOURCES,
    ComparisonReport,
    DensityTrend,
    SonarSafetyMatrix,
    compare_modes,
    density_trend,
    plot_frame,
    select_matrix_sources,
    sonar_safety_matrix,
    speed_effect,
)
from avsociety.experiments.sweep import SweepSummary, summaries_from_raw
from avsociety.utils.log import logger

SET_NUMBERS = (1, 2, 3, 4, 5)


class MissingResultsError(FileNotFoundError):
    def __init__(self, missing: list[Path]):
        self.missing = missing
        super().__init__(f"Missing raw results: {', '.join(str(p) for p in missing)}")


def raw_path(output_dir: Path, name: str) -> Path:
    return Path(output_dir) / "raw" / f"{name}.csv"


def summary_path(output_dir: Path, name: str) -> Path:
    return Path(output_dir) / "summary" / f"{name}.csv"


def _write_csv(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return path


def write_sweep(summary: SweepSummary, output_dir: Path) -> tuple[Path, Path]:
    raw = _write_csv(summary.raw_frame(), raw_path(output_dir, summary.name))
    summary_file = _write_csv(summary.summary_frame(), summary_path(output_dir, summary.name))
    logger.info(f"Saved {summary.name} to '{raw}' and '{summary_file}'")
    return raw, summary_file


def expected_raw_names(set_numbers: Iterable[int] = SET_NUMBERS) -> list[str]:
    """Raw file stems both modes of the given sets produce."""
    names = []
    for k in set_numbers:
        for kind in ("a", "b"):
            names.extend(sub.name for sub in load_experiment_spec(f"{kind}{k}").sub_sweeps())
    return names


def read_raw(output_dir: Path, names: Iterable[str]) -> pd.DataFrame:
    paths = [raw_path(output_dir, name) for name in names]
    missing = [path for path in paths if not path.exists()]
    if missing:
        raise MissingResultsError(missing)
    return pd.concat([pd.read_csv(path) for path in paths], ignore_index=True)


@dataclass
class ReportOutcome:
    comparisons: dict[str, ComparisonReport] = field(default_factory=dict)
    trends: dict[str, DensityTrend] = field(default_factory=dict)
    speed: ComparisonReport | None = None
    """Norm-driven set 3 against set 1 at the same sonar range."""
    matrix: SonarSafetyMatrix | None = None
    written: list[Path] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        checks = [report.passed for report in self.comparisons.values()]
        checks.extend(trend.passed for trend in self.trends.values())
        if self.speed is not None:
            checks.append(self.speed.passed)
        if self.matrix is not None:
            checks.append(self.matrix.passed)
        return all(checks)


def write_report(
    output_dir: Path, set_numbers: Iterable[int] = SET_NUMBERS, *, trend_dirs: Iterable[Path] = ()
) -> ReportOutcome:
    """Summaries, per-set mode comparisons, density trends, the speed effect and, with all
    source sets present, the matrix.

    Each of ``trend_dirs`` holds random-walk results of the same sets under another base seed;
    every one adds a vote to the density trends.
    """
    output_dir = Path(output_dir)
    set_numbers = list(set_numbers)
    names = expected_raw_names(set_numbers)
    summaries = summaries_from_raw(read_raw(output_dir, names))
    random_walk_names = [name for name in names if name.startswith("a")]
    extra_runs = [summaries_from_raw(read_raw(Path(d), random_walk_names)) for d in trend_dirs]
    outcome = ReportOutcome()
    report_dir = output_dir / "report"
    by_key = {(s.set_id.upper(), s.sonar_range): s for s in summaries}
    for summary in summaries:
        outcome.written.append(_write_csv(summary.summary_frame(), summary_path(output_dir, summary.name)))
    for k in set_numbers:
        for sonar in sorted({sonar for set_id, sonar in by_key if set_id == f"A{k}"}):
            a, b = by_key[(f"A{k}", sonar)], by_key.get((f"B{k}", sonar))
            label = f"set{k}-sonar{sonar}"
            others = [s for run in extra_runs for s in run if (s.set_id.upper(), s.sonar_range) == (f"A{k}", sonar)]
            trend = density_trend(a, *others, label=label)
            outcome.trends[label] = trend
            outcome.written.append(_write_csv(trend.to_frame(), report_dir / f"trend-{label}.csv"))
            logger.info(f"Density trend {label}: {sum(trend.increasing)}/{len(trend.votes)} increasing")
            if b is None:
                continue
            report = compare_modes(a, b, label=label)
            outcome.comparisons[label] = report
            outcome.written.append(_write_csv(report.to_frame(), report_dir / f"comparison-{label}.csv"))
            outcome.written.append(_write_csv(plot_frame(a, b), report_dir / f"plot-{label}.csv"))
            logger.info(f"Comparison {label}: {'pass' if report.passed else 'FAIL'}")
    slow, fast = by_key.get(SPEED_EFFECT_SOURCES[0]), by_key.get(SPEED_EFFECT_SOURCES[1])
    if slow is not None and fast is not None:
        outcome.speed = speed_effect(slow, fast, label="speed")
        outcome.written.append(_write_csv(outcome.speed.to_frame(), report_dir / "speed-effect.csv"))
        logger.info(f"Speed effect: {'pass' if outcome.speed.passed else 'FAIL'}")
    sources = select_matrix_sources(summaries)
    if len(sources) == len(MATRIX_SOURCES):
        outcome.matrix = sonar_safety_matrix(sources)
        outcome.written.append(_write_csv(outcome.matrix.to_frame(), report_dir / "matrix.csv"))
        outcome.written.append(_write_csv(outcome.matrix.flags_frame(), report_dir / "matrix-flags.csv"))
        logger.info(f"Sonar/safety matrix: {'pass' if outcome.matrix.passed else 'FAIL'}")
    else:
        logger.info("Skipping the sonar/safety matrix: it needs norm-driven results of all five sets")
    return outcome
