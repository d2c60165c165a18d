"""Fuzzy appraisal engine: membership functions, two-input Mamdani systems and the three rule bases."""

from avsociety.fuzzy.core import (
    CALIBRATED_PEAKS,
    INTENSITY_RANGES,
    LEVELS,
    CalibrationError,
    DomainError,
    FuzzyInferenceSystem,
    FuzzyRule,
    IntensityScale,
    LinguisticVariable,
    MembershipFunction,
    calibrate_membership_peaks,
    classify_intensity,
    infer,
    membership,
)
from avsociety.fuzzy.rulebases import build_ig_fis, build_likelihood_fis, build_undesirability_fis

__all__ = [
    "CALIBRATED_PEAKS",
    "INTENSITY_RANGES",
    "LEVELS",
    "CalibrationError",
    "DomainError",
    "FuzzyInferenceSystem",
    "FuzzyRule",
    "IntensityScale",
    "LinguisticVariable",
    "MembershipFunction",
    "build_ig_fis",
    "build_likelihood_fis",
    "build_undesirability_fis",
    "calibrate_membership_peaks",
    "classify_intensity",
    "infer",
    "membership",
]
