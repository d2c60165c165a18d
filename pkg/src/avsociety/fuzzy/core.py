"""Two-input Mamdani inference over five-level linguistic variables.

Every variable shares the same five supports (VL..VH); only the peak positions are tunable.
Inference uses min for rule activation, max for aggregation, clips the output membership
functions at their activation and defuzzifies the union with the centroid.
"""

import itertools
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np
import skfuzzy as fuzz

from avsociety.utils.log import logger

LEVELS = ("VL", "L", "M", "H", "VH")
INTENSITY_RANGES: tuple[tuple[float, float], ...] = ((0.0, 0.24), (0.1, 0.5), (0.25, 0.73), (0.51, 0.9), (0.76, 1.0))
# VL and VH are plateau ends of the shoulders, the rest are triangle peaks.
CALIBRATED_PEAKS: tuple[float, ...] = (0.2, 0.3, 0.56, 0.8, 0.95)
DEFAULT_RESOLUTION = 1001


class DomainError(ValueError):
    """Raised when a crisp value lies outside [0, 1]."""


class CalibrationError(RuntimeError):
    """Raised when no peak layout satisfies the calibration constraints."""

    def __init__(self, violations: Sequence[tuple[float, str, str]], message: str = ""):
        self.violations = list(violations)
        details = "; ".join(f"{value} classified {got}, expected {expected}" for value, expected, got in self.violations)
        super().__init__(message or f"No feasible peak layout. Violated constraints: {details or 'value check only'}")


def _check_unit(x: float, what: str = "input") -> float:
    x = float(x)
    if math.isnan(x) or not 0.0 <= x <= 1.0:
        raise DomainError(f"{what} {x} is outside [0, 1]")
    return x


@dataclass(frozen=True)
class MembershipFunction:
    """Triangle with feet ``a``, ``c`` and peak ``b``.

    A left shoulder is flat (degree 1) on ``[a, b]``, a right shoulder on ``[b, c]``.
    """

    a: float
    b: float
    c: float
    shoulder: Literal["left", "right"] | None = None

    def __post_init__(self):
        if not 0.0 <= self.a <= self.b <= self.c <= 1.0:
            raise ValueError(f"Breakpoints must satisfy 0 <= a <= b <= c <= 1, got {(self.a, self.b, self.c)}")
        if self.shoulder not in (None, "left", "right"):
            raise ValueError(f"Unknown shoulder {self.shoulder!r}")

    def __call__(self, x: float) -> float:
        return membership(self, x)

    def sample(self, universe: np.ndarray) -> np.ndarray:
        """Degrees over a grid (vectorized)."""
        if self.shoulder == "left":
            return fuzz.trapmf(universe, [self.a, self.a, self.b, self.c])
        if self.shoulder == "right":
            return fuzz.trapmf(universe, [self.a, self.b, self.c, self.c])
        return fuzz.trimf(universe, [self.a, self.b, self.c])


def membership(mf: MembershipFunction, x: float) -> float:
    """Degree of one crisp value, the scalar form of :meth:`MembershipFunction.sample`."""
    return float(mf.sample(np.array([_check_unit(x)]))[0])


@dataclass(frozen=True)
class IntensityScale:
    """Five overlapping supports plus one peak per level."""

    ranges: tuple[tuple[float, float], ...] = INTENSITY_RANGES
    peaks: tuple[float, ...] = CALIBRATED_PEAKS

    def __post_init__(self):
        if len(self.ranges) != len(LEVELS) or len(self.peaks) != len(LEVELS):
            raise ValueError(f"An intensity scale needs exactly {len(LEVELS)} ranges and peaks")
        for (low, high), peak in zip(self.ranges, self.peaks):
            if not 0.0 <= low < high <= 1.0:
                raise ValueError(f"Invalid support ({low}, {high})")
            if not low <= peak <= high:
                raise ValueError(f"Peak {peak} outside its support ({low}, {high})")
        for (_, high), (next_low, _) in itertools.pairwise(self.ranges):
            if next_low >= high:
                raise ValueError("Adjacent supports must overlap")
        if self.ranges[0][0] != 0.0 or self.ranges[-1][1] != 1.0:
            raise ValueError("Supports must cover [0, 1]")

    @classmethod
    def symmetric(cls, ranges: tuple[tuple[float, float], ...] = INTENSITY_RANGES) -> "IntensityScale":
        """Shoulders peaking at the domain edges, inner peaks at the support midpoints."""
        inner = tuple((low + high) / 2 for low, high in ranges[1:-1])
        return cls(ranges=ranges, peaks=(ranges[0][0], *inner, ranges[-1][1]))

    def with_peaks(self, peaks: Mapping[str, float] | Sequence[float]) -> "IntensityScale":
        if isinstance(peaks, Mapping):
            peaks = tuple(float(peaks[level]) for level in LEVELS)
        return IntensityScale(ranges=self.ranges, peaks=tuple(float(p) for p in peaks))

    @cached_property
    def membership_functions(self) -> tuple[MembershipFunction, ...]:
        last = len(LEVELS) - 1
        return tuple(
            MembershipFunction(low, peak, high, shoulder="left" if i == 0 else "right" if i == last else None)
            for i, ((low, high), peak) in enumerate(zip(self.ranges, self.peaks))
        )

    def degrees(self, value: float) -> np.ndarray:
        return np.array([membership(mf, value) for mf in self.membership_functions])


def classify_intensity(value: float, scale: IntensityScale) -> str:
    """Level with the highest degree; exact ties go to the lower level."""
    degrees = scale.degrees(value)
    best = 0
    for i in range(1, len(LEVELS)):
        if degrees[i] > degrees[best]:
            best = i
    return LEVELS[best]


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    tokens: tuple[str, ...]
    scale: IntensityScale = field(default_factory=IntensityScale)

    def __post_init__(self):
        if len(self.tokens) != len(LEVELS):
            raise ValueError(f"Variable {self.name} needs exactly {len(LEVELS)} tokens, got {len(self.tokens)}")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError(f"Variable {self.name} has duplicate tokens")

    @property
    def memberships(self) -> dict[str, MembershipFunction]:
        return dict(zip(self.tokens, self.scale.membership_functions))

    def level_of(self, token: str) -> int:
        try:
            return self.tokens.index(token)
        except ValueError:
            raise ValueError(f"Unknown token {token!r} for variable {self.name} (known: {self.tokens})") from None

    def fuzzify(self, value: float) -> np.ndarray:
        return self.scale.degrees(value)

    def classify(self, value: float) -> str:
        return self.tokens[LEVELS.index(classify_intensity(value, self.scale))]

    def with_scale(self, scale: IntensityScale) -> "LinguisticVariable":
        return LinguisticVariable(self.name, self.tokens, scale)


@dataclass(frozen=True)
class FuzzyRule:
    antecedent: tuple[tuple[str, str], tuple[str, str]]
    consequent: tuple[str, str]


def _centroid(x: np.ndarray, mu: np.ndarray) -> float:
    assert np.any(mu > 0), "no rule fired"
    return float(fuzz.defuzz(x, mu, "centroid"))


class FuzzyInferenceSystem:
    def __init__(
        self,
        name: str,
        inputs: tuple[LinguisticVariable, LinguisticVariable],
        output: LinguisticVariable,
        rules: Sequence[FuzzyRule],
        *,
        resolution: int = DEFAULT_RESOLUTION,
    ):
        self.name = name
        self.inputs = tuple(inputs)
        self.output = output
        self.rules = tuple(rules)
        self._validate()
        self._in1 = np.array([self.inputs[0].level_of(r.antecedent[0][1]) for r in self.rules])
        self._in2 = np.array([self.inputs[1].level_of(r.antecedent[1][1]) for r in self.rules])
        self._out = np.array([self.output.level_of(r.consequent[1]) for r in self.rules])
        self.universe = np.linspace(0.0, 1.0, resolution)
        self._output_samples = np.vstack([mf.sample(self.universe) for mf in output.scale.membership_functions])

    def _validate(self) -> None:
        if len(self.inputs) != 2:
            raise ValueError(f"{self.name}: exactly two inputs are supported")
        expected = len(LEVELS) ** 2
        if len(self.rules) != expected:
            raise ValueError(f"{self.name}: expected {expected} rules, got {len(self.rules)}")
        seen = set()
        for rule in self.rules:
            (var1, tok1), (var2, tok2) = rule.antecedent
            if (var1, var2) != (self.inputs[0].name, self.inputs[1].name):
                raise ValueError(f"{self.name}: rule antecedent {rule.antecedent} does not use the declared inputs")
            if rule.consequent[0] != self.output.name:
                raise ValueError(f"{self.name}: rule consequent {rule.consequent} does not use the declared output")
            self.inputs[0].level_of(tok1)
            self.inputs[1].level_of(tok2)
            self.output.level_of(rule.consequent[1])
            if (tok1, tok2) in seen:
                raise ValueError(f"{self.name}: duplicate antecedent {(tok1, tok2)}")
            seen.add((tok1, tok2))

    def table(self) -> list[tuple[str, str, str]]:
        """Rules as (in1 token, in2 token, output token) in rule-base order."""
        return [(r.antecedent[0][1], r.antecedent[1][1], r.consequent[1]) for r in self.rules]

    def lookup(self, token1: str, token2: str) -> str:
        for in1, in2, out in self.table():
            if (in1, in2) == (token1, token2):
                return out
        raise KeyError((token1, token2))

    def fire(self, in1: float, in2: float) -> np.ndarray:
        """Activation of every rule (min of the two antecedent degrees)."""
        d1 = self.inputs[0].fuzzify(_check_unit(in1, self.inputs[0].name))
        d2 = self.inputs[1].fuzzify(_check_unit(in2, self.inputs[1].name))
        return np.minimum(d1[self._in1], d2[self._in2])

    def output_activations(self, in1: float, in2: float) -> np.ndarray:
        per_token = np.zeros(len(LEVELS))
        np.maximum.at(per_token, self._out, self.fire(in1, in2))
        return per_token

    def infer(self, in1: float, in2: float) -> float:
        per_token = self.output_activations(in1, in2)
        assert per_token.max() > 0, f"{self.name}: no rule fired for {(in1, in2)}"
        aggregated = np.max(np.minimum(self._output_samples, per_token[:, None]), axis=0)
        return _centroid(self.universe, aggregated)

    def with_scale(self, scale: IntensityScale) -> "FuzzyInferenceSystem":
        return FuzzyInferenceSystem(
            self.name,
            (self.inputs[0].with_scale(scale), self.inputs[1].with_scale(scale)),
            self.output.with_scale(scale),
            self.rules,
            resolution=len(self.universe),
        )


def infer(fis: FuzzyInferenceSystem, in1: float, in2: float) -> float:
    return fis.infer(in1, in2)


def default_candidates(scale: IntensityScale, points: int = 6) -> tuple[tuple[float, ...], ...]:
    """Per-level candidate peaks: the current peak first, then an even grid over the support."""
    grids = []
    for (low, high), peak in zip(scale.ranges, scale.peaks):
        grid = [round(float(p), 4) for p in np.linspace(low, high, points)]
        grids.append((peak, *(p for p in grid if not math.isclose(p, peak))))
    return tuple(grids)


def calibrate_membership_peaks(
    scale: IntensityScale,
    constraints: Sequence[tuple[float, str]],
    *,
    candidates: Sequence[Sequence[float]] | None = None,
    check: Callable[[IntensityScale], bool] | None = None,
) -> dict[str, float]:
    """Grid-search peak positions so every ``(value, level)`` constraint classifies as expected.

    Layouts are tried in lexicographic candidate order starting from the current peaks, so the
    search is deterministic and keeps the current layout whenever it is feasible. ``check`` is an
    additional feasibility test on the whole layout (e.g. crisp outputs within tolerance).
    """
    constraints = [(_check_unit(value, "constraint value"), level) for value, level in constraints]
    for _, level in constraints:
        if level not in LEVELS:
            raise ValueError(f"Unknown level {level!r} (known: {LEVELS})")
    grids = candidates if candidates is not None else default_candidates(scale)
    n_tried = 0
    for layout in itertools.product(*grids):
        try:
            trial = scale.with_peaks(layout)
        except ValueError:
            continue
        n_tried += 1
        if all(classify_intensity(value, trial) == level for value, level in constraints):
            if check is None or check(trial):
                logger.debug(f"Calibration accepted layout {layout} after {n_tried} candidates")
                return dict(zip(LEVELS, trial.peaks))
    violations = [
        (value, level, got) for value, level in constraints if (got := classify_intensity(value, scale)) != level
    ]
    raise CalibrationError(violations)


__all__ = [
    "LEVELS",
    "INTENSITY_RANGES",
    "CALIBRATED_PEAKS",
    "DomainError",
    "CalibrationError",
    "MembershipFunction",
    "membership",
    "IntensityScale",
    "classify_intensity",
    "LinguisticVariable",
    "FuzzyRule",
    "FuzzyInferenceSystem",
    "infer",
    "default_candidates",
    "calibrate_membership_peaks",
]
