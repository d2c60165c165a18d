"""Fear appraisal on top of the fuzzy engine."""

from avsociety.emotion.occ import (
    AppraisalInputs,
    Combiner,
    FearConfig,
    FearState,
    FisSet,
    FuzzySettings,
    appraise,
    appraise_constants,
    fear_intensity,
    fear_potential,
    willingness,
)

__all__ = [
    "AppraisalInputs",
    "Combiner",
    "FearConfig",
    "FearState",
    "FisSet",
    "FuzzySettings",
    "appraise",
    "appraise_constants",
    "fear_intensity",
    "fear_potential",
    "willingness",
]
