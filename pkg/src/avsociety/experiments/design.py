"""Experiment sets: rows of world overrides swept over AV counts, repeated with derived seeds."""

import re
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from avsociety.config import ConfigurationError, get_config_path, load_config
from avsociety.society.config import MODES, WorldConfig

SET_IDS = ("a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5")
ROW_SEED_STRIDE = 1000


class UnknownSetError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown experiment set {name!r} (available: {', '.join(SET_IDS)}, all, or a YAML file)")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class ExperimentRow:
    experiment_no: int
    num_avs: int
    sonar_ranges: tuple[int, ...]
    overrides: dict[str, Any] = field(default_factory=dict)
    """World settings besides num_avs and sonar_range."""

    def world_config(self, base: WorldConfig, mode: str, ticks: int, sonar_range: int | None = None) -> WorldConfig:
        if sonar_range is None:
            if len(self.sonar_ranges) != 1:
                raise ValueError(f"Experiment {self.experiment_no} sweeps sonar ranges {self.sonar_ranges}")
            sonar_range = self.sonar_ranges[0]
        return base.replace(
            **self.overrides, num_avs=self.num_avs, sonar_range=sonar_range, mode=mode, ticks_per_run=ticks
        )


@dataclass(frozen=True)
class ExperimentSpec:
    set_id: str
    mode: str
    rows: tuple[ExperimentRow, ...]
    repetitions: int = 7
    base_seed: int = 0
    ticks: int = 1000

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigurationError("mode", f"{self.mode!r} is not one of {MODES}")
        if re.fullmatch(r"[AB]\d+", self.set_id):
            expected = "random-walk" if self.set_id.startswith("A") else "norms"
            if self.mode != expected:
                raise ConfigurationError("mode", f"set {self.set_id} runs in {expected} mode, got {self.mode!r}")
        if not self.rows:
            raise ConfigurationError("rows", "an experiment set needs at least one row")
        if self.repetitions < 1:
            raise ConfigurationError("repetitions", f"{self.repetitions} must be at least 1")
        if self.ticks < 0:
            raise ConfigurationError("ticks", f"{self.ticks} must not be negative")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentSpec":
        unknown = set(data) - {"set_id", "mode", "rows", "repetitions", "base_seed", "ticks"}
        if unknown:
            raise ConfigurationError(sorted(unknown)[0], "unknown experiment setting")
        if "set_id" not in data:
            raise ConfigurationError("set_id", "missing")
        rows = []
        for index, raw in enumerate(data.get("rows") or [], start=1):
            raw = dict(raw)
            experiment_no = int(raw.pop("experiment_no", index))
            if "num_avs" not in raw:
                raise ConfigurationError(f"rows[{index}].num_avs", "missing")
            num_avs = raw.pop("num_avs")
            sonar = raw.pop("sonar_range", None)
            if sonar is None:
                sonar_ranges = (WorldConfig().sonar_range,)
            elif isinstance(sonar, list | tuple):
                sonar_ranges = tuple(sonar)
            else:
                sonar_ranges = (sonar,)
            rows.append(ExperimentRow(experiment_no, num_avs, sonar_ranges, raw))
        return cls(
            set_id=str(data["set_id"]),
            mode=data.get("mode", "random-walk"),
            rows=tuple(rows),
            repetitions=int(data.get("repetitions", 7)),
            base_seed=int(data.get("base_seed", 0)),
            ticks=int(data.get("ticks", 1000)),
        )

    @property
    def sonar_values(self) -> tuple[int, ...]:
        return tuple(sorted({sonar for row in self.rows for sonar in row.sonar_ranges}))

    @property
    def name(self) -> str:
        """File stem of a single-sonar sweep, e.g. ``a1-sonar2``."""
        values = self.sonar_values
        if len(values) != 1:
            return self.set_id.lower()
        return f"{self.set_id.lower()}-sonar{values[0]}"

    @property
    def set_number(self) -> int | None:
        match = re.fullmatch(r"[A-Za-z](\d+)", self.set_id)
        return int(match.group(1)) if match else None

    def sub_sweeps(self) -> list["ExperimentSpec"]:
        """One spec per sonar range. Row indices (and therefore seeds) are kept."""
        return [
            replace(self, rows=tuple(replace(row, sonar_ranges=(sonar,)) for row in self.rows))
            for sonar in self.sonar_values
        ]

    def seed(self, row_index: int, rep: int) -> int:
        return self.base_seed + row_index * ROW_SEED_STRIDE + rep

    def with_overrides(
        self, *, repetitions: int | None = None, ticks: int | None = None, base_seed: int | None = None
    ) -> "ExperimentSpec":
        return replace(
            self,
            repetitions=self.repetitions if repetitions is None else repetitions,
            ticks=self.ticks if ticks is None else ticks,
            base_seed=self.base_seed if base_seed is None else base_seed,
        )


def resolve_set_names(names: str | list[str]) -> list[str]:
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    resolved = []
    for name in names:
        resolved.extend(SET_IDS if name.lower() == "all" else [name])
    return resolved


def load_experiment_spec(name_or_path: str | Path) -> ExperimentSpec:
    """Built-in set (``a1`` .. ``b5``) or a YAML file with the same schema."""
    spec = str(name_or_path)
    if spec.lower() in SET_IDS:
        spec = spec.lower()
    try:
        path = get_config_path(spec)
    except FileNotFoundError:
        raise UnknownSetError(str(name_or_path)) from None
    return ExperimentSpec.from_dict(load_config(path))
