"""Hand-traced validation points for the undesirability system."""

from dataclasses import dataclass

from avsociety.fuzzy.core import (
    CALIBRATED_PEAKS,
    LEVELS,
    FuzzyInferenceSystem,
    IntensityScale,
    calibrate_membership_peaks,
)
from avsociety.fuzzy.rulebases import (
    ACH_GOAL_TOKENS,
    IMP_GOAL_TOKENS,
    UNDESIRABILITY_TOKENS,
    UndesirabilityRevision,
    build_undesirability_fis,
)

VALUE_TOLERANCE = 0.1


@dataclass(frozen=True)
class ValidationCase:
    number: int
    imp_goal: float
    imp_goal_token: str
    ach_goal: float
    ach_goal_token: str
    expected: float
    expected_token: str


# (ImpGoal, AchGoal) -> Undesirability with the token printed next to each value.
UNDESIRABILITY_CASES: tuple[ValidationCase, ...] = (
    ValidationCase(1, 0.1, "VLImpG", 0.5, "MAG", 0.25, "LUD"),
    ValidationCase(2, 0.2, "VLImpG", 1.0, "VHFAG", 0.08, "VLUD"),
    ValidationCase(3, 0.27, "LImpG", 0.0, "NAG", 0.52, "MUD"),
    ValidationCase(4, 0.30, "LImpG", 0.5, "MAG", 0.31, "LUD"),
    ValidationCase(5, 0.4, "LImpG", 1.0, "VHFAG", 0.09, "VLUD"),
    ValidationCase(6, 0.5, "MImpG", 0.0, "NAG", 0.74, "HUD"),
    ValidationCase(7, 0.56, "MImpG", 0.5, "MAG", 0.567, "MUD"),
    ValidationCase(8, 0.6, "MImpG", 1.0, "VHFAG", 0.09, "VLUD"),
    ValidationCase(9, 0.8, "HImpG", 0.0, "NAG", 0.91, "VHUD"),
    ValidationCase(10, 0.85, "HImpG", 0.5, "MAG", 0.746, "HUD"),
    ValidationCase(11, 0.79, "HImpG", 1.0, "VHFAG", 0.085, "VLUD"),
    ValidationCase(12, 0.96, "VHImpG", 0.0, "NAG", 0.917, "VHUD"),
    ValidationCase(13, 0.98, "VHImpG", 0.5, "MAG", 0.747, "HUD"),
    ValidationCase(14, 1.0, "VHImpG", 1.0, "VHFAG", 0.08, "VLUD"),
)


@dataclass(frozen=True)
class ValidationResult:
    case: ValidationCase
    actual: float
    actual_token: str

    @property
    def token_ok(self) -> bool:
        return self.actual_token == self.case.expected_token

    @property
    def value_ok(self) -> bool:
        return abs(self.actual - self.case.expected) <= VALUE_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.token_ok and self.value_ok


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[ValidationResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[ValidationResult]:
        return [r for r in self.results if not r.passed]


def validate_undesirability(fis: FuzzyInferenceSystem) -> ValidationReport:
    results = []
    for case in UNDESIRABILITY_CASES:
        actual = fis.infer(case.imp_goal, case.ach_goal)
        results.append(ValidationResult(case, actual, fis.output.classify(actual)))
    return ValidationReport(tuple(results))


def label_constraints() -> list[tuple[float, str]]:
    """Every printed (value, token) pair as a (value, level) calibration constraint."""
    constraints = []
    for case in UNDESIRABILITY_CASES:
        constraints.append((case.imp_goal, LEVELS[IMP_GOAL_TOKENS.index(case.imp_goal_token)]))
        constraints.append((case.ach_goal, LEVELS[ACH_GOAL_TOKENS.index(case.ach_goal_token)]))
        constraints.append((case.expected, LEVELS[UNDESIRABILITY_TOKENS.index(case.expected_token)]))
    return sorted(set(constraints))


def calibrate_undesirability(
    scale: IntensityScale | None = None,
    *,
    revision: UndesirabilityRevision = "validated",
    candidates=None,
) -> dict[str, float]:
    """Peaks under which every printed label holds and every crisp output is within tolerance."""
    scale = scale or IntensityScale(peaks=CALIBRATED_PEAKS)

    def _outputs_match(trial: IntensityScale) -> bool:
        return validate_undesirability(build_undesirability_fis(trial, revision=revision)).passed

    return calibrate_membership_peaks(scale, label_constraints(), candidates=candidates, check=_outputs_match)
