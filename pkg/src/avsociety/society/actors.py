"""Actor catalog and personalities of the vehicle society."""

from collections.abc import Mapping
from dataclasses import dataclass
from enum import IntEnum

from avsociety.config import ConfigurationError


class Dominance(IntEnum):
    VERY_WEAK_DOMINATING = 1
    WEAK_DOMINATING = 2
    DOMINATING = 3
    VERY_DOMINATING = 4

    @classmethod
    def parse(cls, value: "str | int | Dominance") -> "Dominance":
        if isinstance(value, str):
            key = value.strip().upper().replace("-", "_").replace(" ", "_")
            try:
                return cls[key]
            except KeyError:
                raise ConfigurationError("dominance", f"unknown dominance class {value!r}") from None
        return cls(value)


@dataclass(frozen=True)
class ActorKind:
    name: str
    symbol: str
    dominance: Dominance
    min_weight: float
    """Lower weight bound in kg (exclusive when ``max_weight`` is None)."""
    max_weight: float | None

    def admits_weight(self, kg: float) -> bool:
        if self.max_weight is None:
            return kg > self.min_weight
        return self.min_weight <= kg <= self.max_weight


_KINDS = (
    ActorKind("AV_Truck", "T", Dominance.VERY_DOMINATING, 5000, None),
    ActorKind("AV_Bus", "B", Dominance.VERY_DOMINATING, 4500, 50000),
    ActorKind("AV_Toyota_Small_truck", "TY", Dominance.DOMINATING, 3000, 4000),
    ActorKind("AV_Carry", "C", Dominance.WEAK_DOMINATING, 2000, 2800),
    ActorKind("AV_Car3000cc", "CB", Dominance.WEAK_DOMINATING, 2000, 2500),
    ActorKind("AV_Car2000cc", "CS", Dominance.WEAK_DOMINATING, 1500, 1700),
    ActorKind("AV_Rickshaw", "R", Dominance.WEAK_DOMINATING, 1200, 1400),
    ActorKind("AV_Ambulance", "A", Dominance.WEAK_DOMINATING, 1200, 1400),
    ActorKind("AV_Motorbike", "M", Dominance.VERY_WEAK_DOMINATING, 800, 1100),
    ActorKind("AV_Cycle", "CL", Dominance.VERY_WEAK_DOMINATING, 400, 400),
)

ACTOR_CATALOG: dict[str, ActorKind] = {kind.symbol: kind for kind in _KINDS}

TRUCK = ACTOR_CATALOG["T"]
CAR = ACTOR_CATALOG["CB"]

DEFAULT_LAMBDAS: dict[Dominance, float] = {
    Dominance.VERY_DOMINATING: 0.6,
    Dominance.DOMINATING: 0.45,
    Dominance.WEAK_DOMINATING: 0.3,
    Dominance.VERY_WEAK_DOMINATING: 0.15,
}

DEFAULT_GOAL_IMPORTANCE = 0.5
# Kinds on urgent missions value their goal more.
GOAL_IMPORTANCE_BY_SYMBOL = {"A": 0.96}


def get_kind(name_or_symbol: str) -> ActorKind:
    if name_or_symbol in ACTOR_CATALOG:
        return ACTOR_CATALOG[name_or_symbol]
    for kind in _KINDS:
        if kind.name == name_or_symbol:
            return kind
    raise ConfigurationError("kind", f"unknown actor kind {name_or_symbol!r}")


@dataclass(frozen=True)
class Personality:
    dominance: Dominance
    lam: float
    """Egoist threshold: willingness below it means the norm is disobeyed."""
    fear_threshold: float | None = None
    goal_importance: float = DEFAULT_GOAL_IMPORTANCE

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigurationError("personalities.lambda", f"{self.lam} is outside [0, 1]")
        if self.fear_threshold is not None and not 0.0 <= self.fear_threshold <= 1.0:
            raise ConfigurationError("personalities.fear_threshold", f"{self.fear_threshold} is outside [0, 1]")
        if not 0.0 <= self.goal_importance <= 1.0:
            raise ConfigurationError("personalities.goal_importance", f"{self.goal_importance} is outside [0, 1]")

    @classmethod
    def for_kind(
        cls,
        kind: ActorKind,
        lambdas: Mapping[Dominance, float] | None = None,
        fear_thresholds: Mapping[Dominance, float] | None = None,
    ) -> "Personality":
        lambdas = DEFAULT_LAMBDAS if lambdas is None else lambdas
        return cls(
            dominance=kind.dominance,
            lam=lambdas[kind.dominance],
            fear_threshold=(fear_thresholds or {}).get(kind.dominance),
            goal_importance=GOAL_IMPORTANCE_BY_SYMBOL.get(kind.symbol, DEFAULT_GOAL_IMPORTANCE),
        )


def parse_lambdas(raw: Mapping[str, float] | None) -> dict[Dominance, float]:
    lambdas = dict(DEFAULT_LAMBDAS)
    for key, value in (raw or {}).items():
        lambdas[Dominance.parse(key)] = float(value)
    ordered = [lambdas[d] for d in sorted(Dominance)]
    if ordered != sorted(ordered):
        raise ConfigurationError("personalities.lambda", f"must not decrease with dominance, got {ordered}")
    return lambdas
