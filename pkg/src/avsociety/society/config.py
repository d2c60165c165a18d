"""World and simulation settings, loaded from the built-in YAML or a user file."""

import dataclasses
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from avsociety.config import ConfigurationError, load_config
from avsociety.emotion.occ import FearConfig, FuzzySettings
from avsociety.society.actors import DEFAULT_LAMBDAS, Dominance, parse_lambdas

MODES = ("random-walk", "norms")
VEHICLE_RATIOS = ("2:1", "3:1", "4:1")
CONDITIONS = ("bright", "rainy")
MAX_AVS = 30


def _check_range(key: str, value: float, low: float, high: float) -> None:
    if not low <= value <= high:
        raise ConfigurationError(key, f"{value} is outside [{low}, {high}]")


def _check_int(key: str, value: Any) -> None:
    try:
        is_int = not isinstance(value, bool) and int(value) == value
    except (TypeError, ValueError):
        is_int = False
    if not is_int:
        raise ConfigurationError(key, f"{value!r} is not an integer")


@dataclass(frozen=True)
class WorldConfig:
    num_avs: int = 10
    vehicle_ratio: str = "2:1"
    """Trucks to cars."""
    min_velocity: float = 0.14
    max_velocity: float = 0.8
    acceleration_rate: float = 0.1
    deceleration_rate: float = 0.1
    safety_distance: int = 3
    sonar_range: int = 2
    metacognition: bool = False
    """Off: random walk. On: norms driven by fear."""
    li: float = 0.1
    ud: float = 0.1
    ig: float = 1.0
    world_size: int = 50
    ticks_per_run: int = 1000
    collision_radius: float = 0.5
    condition: str = "bright"
    dynamic_appraisal: bool = False
    """Derive the appraisal inputs from the belief instead of the li/ud/ig sliders."""
    sense_of_reality: float = 0.9
    headway_ticks: float = 2.0
    """Gap (in ticks of own travel) behind the vehicle for the two-second rule."""

    def __post_init__(self):
        _check_int("num_avs", self.num_avs)
        _check_range("num_avs", self.num_avs, 1, MAX_AVS)
        if self.vehicle_ratio not in VEHICLE_RATIOS:
            raise ConfigurationError("vehicle_ratio", f"{self.vehicle_ratio!r} is not one of {VEHICLE_RATIOS}")
        for key in ("min_velocity", "max_velocity", "acceleration_rate", "deceleration_rate", "li", "ud", "ig"):
            _check_range(key, getattr(self, key), 0.0, 1.0)
        if self.min_velocity > self.max_velocity:
            raise ConfigurationError("min_velocity", f"{self.min_velocity} exceeds max_velocity {self.max_velocity}")
        for key in ("safety_distance", "sonar_range"):
            _check_int(key, getattr(self, key))
            _check_range(key, getattr(self, key), 1, 10)
        _check_int("world_size", self.world_size)
        if self.world_size < 1:
            raise ConfigurationError("world_size", f"{self.world_size} must be positive")
        _check_int("ticks_per_run", self.ticks_per_run)
        if self.ticks_per_run < 0:
            raise ConfigurationError("ticks_per_run", f"{self.ticks_per_run} must not be negative")
        if not 0.0 < self.collision_radius < self.world_size / 2:
            raise ConfigurationError("collision_radius", f"{self.collision_radius} must be in (0, world_size / 2)")
        if self.condition not in CONDITIONS:
            raise ConfigurationError("condition", f"{self.condition!r} is not one of {CONDITIONS}")
        _check_range("sense_of_reality", self.sense_of_reality, 0.0, 1.0)
        if self.headway_ticks <= 0:
            raise ConfigurationError("headway_ticks", f"{self.headway_ticks} must be positive")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "WorldConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        data = {key.replace("-", "_"): value for key, value in data.items()}
        if "mode" in data:
            mode = data.pop("mode")
            if mode not in MODES:
                raise ConfigurationError("mode", f"{mode!r} is not one of {MODES}")
            data["metacognition"] = mode == "norms"
        for key in data:
            if key not in known:
                raise ConfigurationError(key, "unknown world setting")
        return cls(**data)

    def replace(self, **overrides: Any) -> "WorldConfig":
        return WorldConfig.from_dict(dataclasses.asdict(self) | overrides)

    @property
    def mode(self) -> str:
        return "norms" if self.metacognition else "random-walk"

    @property
    def ratio(self) -> int:
        return int(self.vehicle_ratio.split(":")[0])

    @property
    def trucks(self) -> int:
        """Round-half-up share of trucks."""
        share = Fraction(self.num_avs * self.ratio, self.ratio + 1)
        return int(share + Fraction(1, 2))

    @property
    def cars(self) -> int:
        return self.num_avs - self.trucks


@dataclass(frozen=True)
class SimulationSettings:
    """Everything besides the world sliders that shapes a run."""

    fear: FearConfig = field(default_factory=FearConfig)
    lambdas: dict[Dominance, float] = field(default_factory=lambda: dict(DEFAULT_LAMBDAS))
    fear_thresholds: dict[Dominance, float] = field(default_factory=dict)
    fuzzy: FuzzySettings = field(default_factory=FuzzySettings)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SimulationSettings":
        personalities = data.get("personalities", {}) or {}
        unknown = set(personalities) - {"lambda", "fear_threshold"}
        if unknown:
            raise ConfigurationError(f"personalities.{sorted(unknown)[0]}", "unknown personality setting")
        fuzzy = dict(data.get("fuzzy", {}) or {})
        try:
            return cls(
                fear=FearConfig(**(data.get("fear", {}) or {})),
                lambdas=parse_lambdas(personalities.get("lambda")),
                fear_thresholds={
                    Dominance.parse(k): float(v) for k, v in (personalities.get("fear_threshold") or {}).items()
                },
                fuzzy=FuzzySettings(**fuzzy),
            )
        except TypeError as e:
            raise ConfigurationError("settings", str(e)) from None


def load_settings(config_spec: str | Path = "default") -> tuple[WorldConfig, SimulationSettings]:
    """World defaults and simulation settings from a YAML file."""
    data = load_config(config_spec)
    unknown = set(data) - {"world", "fear", "personalities", "fuzzy"}
    if unknown:
        raise ConfigurationError(sorted(unknown)[0], "unknown configuration section")
    return WorldConfig.from_dict(data.get("world", {}) or {}), SimulationSettings.from_dict(data)
