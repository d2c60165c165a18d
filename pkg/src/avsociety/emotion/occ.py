"""Prospect-based fear: potential, thresholded intensity and the norm-compliance willingness."""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum

from avsociety.config import ConfigurationError
from avsociety.fuzzy.core import CALIBRATED_PEAKS, LEVELS, FuzzyInferenceSystem, IntensityScale
from avsociety.fuzzy.rulebases import (
    UndesirabilityRevision,
    build_ig_fis,
    build_likelihood_fis,
    build_undesirability_fis,
)


class Combiner(str, Enum):
    MEAN = "mean"
    MIN = "min"
    PRODUCT = "product"


@dataclass(frozen=True)
class FearConfig:
    threshold: float = 0.1
    combiner: Combiner = Combiner.MEAN
    weights: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)
    """Weights of (undesirability, likelihood, ig) for the mean combiner."""

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigurationError("fear.threshold", f"{self.threshold} is outside [0, 1]")
        try:
            object.__setattr__(self, "combiner", Combiner(self.combiner))
        except ValueError:
            raise ConfigurationError(
                "fear.combiner", f"unknown combiner {self.combiner!r} (use {[c.value for c in Combiner]})"
            ) from None
        weights = tuple(float(w) for w in self.weights)
        if len(weights) != 3 or any(w < 0 for w in weights):
            raise ConfigurationError("fear.weights", f"need three nonnegative weights, got {self.weights}")
        if abs(math.fsum(weights) - 1.0) > 1e-9:
            raise ConfigurationError("fear.weights", f"weights must sum to 1, got {math.fsum(weights)}")
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class FearState:
    undesirability: float
    likelihood: float
    ig: float
    potential: float
    threshold: float
    intensity: float
    willingness: float

    def as_row(self, tick: int, agent_id: int) -> dict:
        row = {"tick": tick, "agent_id": agent_id} | asdict(self)
        del row["threshold"]
        return row


def fear_potential(undesirability: float, likelihood: float, ig: float, cfg: FearConfig) -> float:
    values = (undesirability, likelihood, ig)
    if cfg.combiner is Combiner.MIN:
        return min(values)
    if cfg.combiner is Combiner.PRODUCT:
        return math.prod(values)
    return math.fsum(w * v for w, v in zip(cfg.weights, values))


def fear_intensity(potential: float, threshold: float) -> float:
    if potential > threshold:
        return potential - threshold
    return 0.0


def willingness(intensity: float) -> float:
    return intensity


@dataclass(frozen=True)
class AppraisalInputs:
    imp_goal: float
    ach_goal: float
    distance: float
    speed: float
    sense_of_reality: float
    proximity: float


@dataclass(frozen=True)
class FisSet:
    undesirability: FuzzyInferenceSystem
    likelihood: FuzzyInferenceSystem
    ig: FuzzyInferenceSystem

    @classmethod
    def build(
        cls,
        peaks: dict[str, float] | None = None,
        *,
        revision: UndesirabilityRevision = "validated",
    ) -> "FisSet":
        scale = IntensityScale(peaks=CALIBRATED_PEAKS)
        if peaks is not None:
            scale = scale.with_peaks({level: peaks[level] for level in LEVELS})
        return cls(
            undesirability=build_undesirability_fis(scale, revision=revision),
            likelihood=build_likelihood_fis(scale),
            ig=build_ig_fis(scale),
        )


def _chain(undesirability: float, likelihood: float, ig: float, cfg: FearConfig, threshold: float) -> FearState:
    potential = fear_potential(undesirability, likelihood, ig, cfg)
    intensity = fear_intensity(potential, threshold)
    return FearState(
        undesirability=undesirability,
        likelihood=likelihood,
        ig=ig,
        potential=potential,
        threshold=threshold,
        intensity=intensity,
        willingness=willingness(intensity),
    )


def appraise(
    inputs: AppraisalInputs,
    fis_set: FisSet,
    cfg: FearConfig,
    *,
    threshold: float | None = None,
    likelihood_override: float | None = None,
) -> FearState:
    """Run the three fuzzy legs and chain them into a FearState."""
    undesirability = fis_set.undesirability.infer(inputs.imp_goal, inputs.ach_goal)
    likelihood = fis_set.likelihood.infer(inputs.distance, inputs.speed)
    if likelihood_override is not None:
        likelihood = likelihood_override
    ig = fis_set.ig.infer(inputs.sense_of_reality, inputs.proximity)
    return _chain(undesirability, likelihood, ig, cfg, cfg.threshold if threshold is None else threshold)


def appraise_constants(
    undesirability: float,
    likelihood: float,
    ig: float,
    cfg: FearConfig,
    *,
    threshold: float | None = None,
) -> FearState:
    """Slider mode: crisp appraisal values injected directly."""
    return _chain(undesirability, likelihood, ig, cfg, cfg.threshold if threshold is None else threshold)


@dataclass(frozen=True)
class FuzzySettings:
    peaks: dict[str, float] = field(default_factory=lambda: dict(zip(LEVELS, CALIBRATED_PEAKS)))
    undesirability_rules: UndesirabilityRevision = "validated"

    def __post_init__(self):
        missing = [level for level in LEVELS if level not in self.peaks]
        if missing:
            raise ConfigurationError("fuzzy.peaks", f"missing levels {missing}")
        if self.undesirability_rules not in ("published", "validated"):
            raise ConfigurationError("fuzzy.undesirability_rules", f"unknown revision {self.undesirability_rules!r}")

    def build(self) -> FisSet:
        return FisSet.build(self.peaks, revision=self.undesirability_rules)
