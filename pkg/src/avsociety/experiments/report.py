"""Mode comparison, the sonar/safety matrix and plot data."""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import pandas as pd

from avsociety.experiments.sweep import SweepSummary


class ShapeError(ValueError):
    """Summaries do not cover the same AV counts, or matrix cells are missing or duplicated."""


Means = Mapping[int, float]


def _means(summary: SweepSummary | Means) -> dict[int, float]:
    if isinstance(summary, SweepSummary):
        return summary.means()
    return {int(k): float(v) for k, v in summary.items()}


@dataclass(frozen=True)
class ComparisonRow:
    num_avs: int
    mean_a: float
    """Random-walk society."""
    mean_b: float
    """Norm-driven society."""

    @property
    def delta(self) -> float:
        return self.mean_a - self.mean_b

    @property
    def ratio(self) -> float:
        return self.mean_b / self.mean_a if self.mean_a else math.nan

    @property
    def passed(self) -> bool:
        return self.mean_b < self.mean_a


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    label: str = ""

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(
            [
                {
                    "num_avs": r.num_avs,
                    "mean_a": r.mean_a,
                    "mean_b": r.mean_b,
                    "delta": r.delta,
                    "ratio": r.ratio,
                    "passed": r.passed,
                }
                for r in self.rows
            ],
            columns=["num_avs", "mean_a", "mean_b", "delta", "ratio", "passed"],
        )


def compare_modes(a: SweepSummary | Means, b: SweepSummary | Means, *, label: str = "") -> ComparisonReport:
    """Per AV count: does the norm-driven society (b) collide less than the random walk (a)?"""
    means_a, means_b = _means(a), _means(b)
    if set(means_a) != set(means_b):
        raise ShapeError(f"Summaries cover different AV counts: {sorted(means_a)} vs {sorted(means_b)}")
    rows = tuple(ComparisonRow(n, means_a[n], means_b[n]) for n in sorted(means_a))
    return ComparisonReport(rows, label)


def plot_frame(a: SweepSummary, b: SweepSummary) -> pd.DataFrame:
    """x = num_avs, one mean and one stdev column per mode."""
    if set(a.means()) != set(b.means()):
        raise ShapeError(f"Summaries cover different AV counts: {sorted(a.means())} vs {sorted(b.means())}")
    by_n_b = {row.num_avs: row for row in b.rows}
    records = []
    for row_a in sorted(a.rows, key=lambda r: r.num_avs):
        row_b = by_n_b[row_a.num_avs]
        records.append(
            {
                "num_avs": row_a.num_avs,
                a.mode: row_a.mean,
                f"{a.mode}_stdev": row_a.stdev,
                b.mode: row_b.mean,
                f"{b.mode}_stdev": row_b.stdev,
            }
        )
    return pd.DataFrame.from_records(records)


def _increasing(values: Sequence[float]) -> bool:
    return all(later > earlier for earlier, later in zip(values, values[1:]))


@dataclass(frozen=True)
class DensityTrend:
    """Random-walk means by AV count, one vote per base seed."""

    num_avs: tuple[int, ...]
    votes: tuple[tuple[float, ...], ...]
    """Means in ``num_avs`` order, one tuple per base seed."""
    base_seeds: tuple[int | None, ...]
    label: str = ""

    @property
    def increasing(self) -> tuple[bool, ...]:
        return tuple(_increasing(means) for means in self.votes)

    @property
    def passed(self) -> bool:
        """Strictly increasing means for a majority of the base seeds."""
        return 2 * sum(self.increasing) > len(self.votes)

    def to_frame(self) -> pd.DataFrame:
        records = [
            {"base_seed": seed, "increasing": flag} | {str(n): m for n, m in zip(self.num_avs, means)}
            for seed, flag, means in zip(self.base_seeds, self.increasing, self.votes)
        ]
        return pd.DataFrame.from_records(records, columns=["base_seed", "increasing", *map(str, self.num_avs)])


def density_trend(*runs: SweepSummary | Means, label: str = "") -> DensityTrend:
    """Collect one vote per run of the same set under distinct base seeds."""
    if not runs:
        raise ShapeError("A density trend needs at least one summary")
    all_means = [_means(run) for run in runs]
    counts = {tuple(sorted(means)) for means in all_means}
    if len(counts) != 1:
        raise ShapeError(f"Runs cover different AV counts: {sorted(counts)}")
    seeds = tuple(run.rows[0].seeds[0] if isinstance(run, SweepSummary) else None for run in runs)
    known = [seed for seed in seeds if seed is not None]
    if len(set(known)) != len(known):
        raise ShapeError(f"Runs share a base seed: {known}")
    num_avs = counts.pop()
    votes = tuple(tuple(means[n] for n in num_avs) for means in all_means)
    return DensityTrend(num_avs, votes, seeds, label)


def speed_effect(slow: SweepSummary | Means, fast: SweepSummary | Means, *, label: str = "") -> ComparisonReport:
    """Per AV count: does the slow norm-driven set (b) collide less than the fast one (a)?"""
    return compare_modes(fast, slow, label=label)


# (slow set, sonar), (fast set, sonar): same safety distance and sonar, max velocity 0.3 vs 0.8
SPEED_EFFECT_SOURCES: tuple[tuple[str, int], tuple[str, int]] = (("B3", 2), ("B1", 2))

# (safety distance, sonar range) -> (set providing the cell, sonar sub-sweep)
MATRIX_SOURCES: dict[tuple[int, int], tuple[str, int]] = {
    (1, 1): ("B5", 1),
    (2, 2): ("B3", 2),
    (2, 5): ("B2", 5),
    (3, 2): ("B1", 2),
    (3, 3): ("B4", 3),
    (3, 5): ("B1", 5),
}


@dataclass(frozen=True)
class SonarSafetyMatrix:
    cells: dict[tuple[int, int], dict[int, float]]
    num_avs: tuple[int, ...]

    def flags(self) -> dict[int, bool]:
        """Per AV count: long safety distance with short sonar collides more than (3, 3) and (2, 2)."""
        worst, even, small = self.cells[(3, 2)], self.cells[(3, 3)], self.cells[(2, 2)]
        return {n: worst[n] > even[n] and worst[n] > small[n] for n in self.num_avs}

    @property
    def passed(self) -> bool:
        return all(self.flags().values())

    def to_frame(self) -> pd.DataFrame:
        records = []
        for (safety, sonar), means in sorted(self.cells.items()):
            source = MATRIX_SOURCES.get((safety, sonar), ("", 0))[0]
            records.append(
                {"safety_distance": safety, "sonar_range": sonar, "source": source}
                | {str(n): means[n] for n in self.num_avs}
            )
        return pd.DataFrame.from_records(records)

    def flags_frame(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(
            [{"num_avs": n, "passed": flag} for n, flag in self.flags().items()], columns=["num_avs", "passed"]
        )


MatrixCell = SweepSummary | tuple[tuple[int, int], Means]


def sonar_safety_matrix(cells: Iterable[MatrixCell]) -> SonarSafetyMatrix:
    """Key norm-driven results by (safety distance, sonar range).

    Each cell is a summary (keyed by its rows' safety distance and sonar range) or an explicit
    ``((safety, sonar), {num_avs: mean})`` pair.
    """
    matrix: dict[tuple[int, int], dict[int, float]] = {}
    for cell in cells:
        if isinstance(cell, SweepSummary):
            safeties = {row.safety_distance for row in cell.rows}
            if len(safeties) != 1:
                raise ShapeError(f"{cell.name} mixes safety distances {sorted(safeties)}")
            key, means = (safeties.pop(), cell.sonar_range), cell.means()
        else:
            key, means = (int(cell[0][0]), int(cell[0][1])), _means(cell[1])
        if key in matrix:
            raise ShapeError(f"Duplicate matrix cell {key}")
        matrix[key] = means
    absent = sorted(set(MATRIX_SOURCES) - set(matrix))
    if absent:
        raise ShapeError(f"Missing matrix cells (safety, sonar): {absent}")
    counts = {tuple(sorted(means)) for means in matrix.values()}
    if len(counts) != 1:
        raise ShapeError(f"Matrix cells cover different AV counts: {sorted(counts)}")
    return SonarSafetyMatrix(matrix, counts.pop())


def select_matrix_sources(summaries: Iterable[SweepSummary]) -> list[SweepSummary]:
    """The canonical summary for every matrix cell, in matrix order."""
    by_source = {(s.set_id.upper(), s.sonar_range): s for s in summaries}
    return [by_source[source] for source in MATRIX_SOURCES.values() if source in by_source]


# Published mean collisions per AV count, used to check the comparison logic.
REFERENCE_SET1 = {
    "random-walk": {10: 48.63886, 15: 95.57575, 20: 152.584, 25: 222.3648, 30: 305.439},
    "norms": {10: 2.573837, 15: 7.317401, 20: 16.17935, 25: 32.20731, 30: 59.35412},
}
REFERENCE_SET5 = {
    "random-walk": {10: 37.75169, 15: 85.15609, 20: 145.9167, 25: 215.4169, 30: 294.7733},
    "norms": {10: 0.791342, 15: 2.084906, 20: 7.152462, 25: 11.63587, 30: 4.069908},
}
REFERENCE_MATRIX: dict[tuple[int, int], dict[int, float]] = {
    (1, 1): {10: 0.791342, 15: 2.084906, 20: 7.152462, 25: 11.63587, 30: 4.069908},
    (2, 2): {10: 0.785513, 15: 2.268417, 20: 4.767293, 25: 8.728624, 30: 14.69935},
    (2, 5): {10: 0.814496, 15: 2.711523, 20: 6.390049, 25: 13.36398, 30: 24.04687},
    (3, 2): {10: 3.01972, 15: 8.936398, 20: 20.14434, 25: 40.31569, 30: 72.42839},
    (3, 3): {10: 1.889218, 15: 6.042479, 20: 14.54727, 25: 28.01678, 30: 44.53196},
    (3, 5): {10: 2.127955, 15: 5.698404, 20: 12.21435, 25: 24.09892, 30: 46.27984},
}
