"""Road interaction rules: which social norm applies to a scenario and which road norms gate it.

Rules are written from the deciding vehicle's point of view. A scenario is the vehicle's role
(leader when the nearest neighbor is behind, follower when it is ahead), how the neighbor's
dominance relates to its own, the maneuver in progress and the weather.
A social norm is acted on only when all of its road-norm predicates hold.
"""

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

from avsociety.society.actions import ActionKind
from avsociety.society.actors import ActorKind
from avsociety.society.belief import Belief
from avsociety.society.config import WorldConfig


class Role(str, Enum):
    LEADER = "leader"
    FOLLOWER = "follower"


class Relation(str, Enum):
    """Dominance of the other vehicle relative to the deciding one."""

    STRONGER = "stronger"
    WEAKER = "weaker"
    EQUAL = "equal"


class Maneuver(str, Enum):
    FOLLOWING = "following"
    OVERTAKING_REQUEST = "overtaking-request"
    TAILGATING = "tailgating"


class Emotion(str, Enum):
    FEAR = "fear"
    OTHER = "other"


@dataclass(frozen=True)
class Scenario:
    role: Role
    relation: Relation
    maneuver: Maneuver
    condition: str = "bright"


@dataclass(frozen=True)
class ScenarioPattern:
    role: Role
    relation: Relation
    maneuvers: frozenset[Maneuver]
    condition: str = "any"

    def matches(self, scenario: Scenario) -> bool:
        return (
            scenario.role is self.role
            and scenario.relation is self.relation
            and scenario.maneuver in self.maneuvers
            and self.condition in ("any", scenario.condition)
        )


# === Road-norm predicates ===
# Each one looks at third parties: in-sonar vehicles other than the nearest one.


def side_clear(belief: Belief, cfg: WorldConfig) -> bool:
    """Nobody on the left within the safety distance, so a lane change or pull-over is possible."""
    return not any(0 < n.bearing < math.pi and n.distance < cfg.safety_distance for n in belief.others())


def two_second_rule(belief: Belief, cfg: WorldConfig) -> bool:
    """Nobody behind within the headway gap, so braking leaves room for the traffic behind."""
    headway = cfg.headway_ticks * belief.velocity * (2 if cfg.condition == "rainy" else 1)
    return not any(not n.ahead and n.distance < headway for n in belief.others())


def speed_up(belief: Belief, cfg: WorldConfig) -> bool:
    """Nobody ahead within the safety distance."""
    return not any(n.ahead and n.distance < cfg.safety_distance for n in belief.others())


def assist_overtaking(belief: Belief, cfg: WorldConfig) -> bool:
    """Nobody else closing in from behind within the safety distance."""
    return not any(
        not n.ahead and n.closing_speed > 0 and n.distance < cfg.safety_distance for n in belief.others()
    )


ROAD_NORMS: dict[str, Callable[[Belief, WorldConfig], bool]] = {
    "keep-lane": side_clear,
    "no-bus-lane": side_clear,
    "two-second-rule": two_second_rule,
    "speed-up": speed_up,
    "assist-overtaking": assist_overtaking,
}


@dataclass(frozen=True)
class NormRule:
    name: str
    social_norm: str
    pattern: ScenarioPattern | None
    """None for the fallback rules."""
    emotion: Emotion
    p: str | None = None
    q: str | None = None
    comply: ActionKind = ActionKind.MAINTAIN_SAFE_DISTANCE
    violate: ActionKind = ActionKind.KEEP_COURSE

    def __post_init__(self):
        for predicate in self.predicates:
            if predicate not in ROAD_NORMS:
                raise ValueError(f"Unknown road norm {predicate!r} (available: {list(ROAD_NORMS)})")

    @property
    def predicates(self) -> tuple[str, ...]:
        return tuple(name for name in (self.p, self.q) if name is not None)

    @property
    def is_fear(self) -> bool:
        return self.emotion is Emotion.FEAR

    def road_norms_hold(self, belief: Belief, cfg: WorldConfig) -> bool:
        return all(ROAD_NORMS[name](belief, cfg) for name in self.predicates)


def _pattern(role: Role, relation: Relation, *maneuvers: Maneuver, condition: str = "any") -> ScenarioPattern:
    return ScenarioPattern(role, relation, frozenset(maneuvers), condition)


_FOLLOW = (Maneuver.FOLLOWING, Maneuver.TAILGATING)

NORM_RULES: tuple[NormRule, ...] = (
    NormRule(
        "weaker-overtakes-leader",
        "help-the-weaker",
        _pattern(Role.LEADER, Relation.WEAKER, Maneuver.OVERTAKING_REQUEST),
        Emotion.OTHER,
    ),
    NormRule(
        "stronger-overtakes-leader",
        "maintain-distance-from-stronger",
        _pattern(Role.LEADER, Relation.STRONGER, Maneuver.OVERTAKING_REQUEST),
        Emotion.FEAR,
        p="no-bus-lane",
        q="assist-overtaking",
        comply=ActionKind.YIELD_PASSAGE,
    ),
    NormRule(
        "equal-overtakes-leader",
        "tit-for-tat",
        _pattern(Role.LEADER, Relation.EQUAL, Maneuver.OVERTAKING_REQUEST),
        Emotion.OTHER,
    ),
    NormRule(
        "follower-of-equal",
        "give-the-right",
        _pattern(Role.FOLLOWER, Relation.EQUAL, *_FOLLOW),
        Emotion.FEAR,
        p="speed-up",
        q="assist-overtaking",
        comply=ActionKind.YIELD_PASSAGE,
    ),
    NormRule(
        "follower-of-stronger-bright",
        "keep-distance-from-stronger",
        _pattern(Role.FOLLOWER, Relation.STRONGER, Maneuver.FOLLOWING, condition="bright"),
        Emotion.FEAR,
        p="two-second-rule",
    ),
    NormRule(
        "follower-of-stronger-rainy",
        "keep-distance-from-stronger",
        _pattern(Role.FOLLOWER, Relation.STRONGER, Maneuver.FOLLOWING, condition="rainy"),
        Emotion.FEAR,
        p="two-second-rule",
    ),
    NormRule(
        "tailgating-stronger",
        "keep-distance-from-stronger",
        _pattern(Role.FOLLOWER, Relation.STRONGER, Maneuver.TAILGATING),
        Emotion.FEAR,
        p="speed-up",
        comply=ActionKind.YIELD_PASSAGE,
    ),
    NormRule(
        "tailgating-weaker",
        "abide-the-rule",
        _pattern(Role.FOLLOWER, Relation.WEAKER, Maneuver.TAILGATING),
        Emotion.FEAR,
        p="speed-up",
        q="no-bus-lane",
    ),
)

DEFAULT_STRONGER_RULE = NormRule("default-stronger", "maintain-distance-from-stronger", None, Emotion.FEAR)
DEFAULT_KEEP_COURSE_RULE = NormRule(
    "default-keep-course", "keep-course", None, Emotion.OTHER, comply=ActionKind.KEEP_COURSE
)
# Unmatched pre-crash scenarios: a leader pulls away, a follower brakes.
DEFAULT_SAFE_DISTANCE_RULE = NormRule("default-safe-distance", "maintain-safe-distance", None, Emotion.OTHER)


def relation_of(self_kind: ActorKind, other_kind: ActorKind) -> Relation:
    if other_kind.dominance > self_kind.dominance:
        return Relation.STRONGER
    if other_kind.dominance < self_kind.dominance:
        return Relation.WEAKER
    return Relation.EQUAL


def classify_scenario(
    belief: Belief,
    self_kind: ActorKind,
    other_kind: ActorKind | None = None,
    condition: str = "bright",
) -> Scenario | None:
    """Scenario against the nearest neighbor, None without one."""
    nearest = belief.nearest
    if nearest is None:
        return None
    relation = relation_of(self_kind, other_kind or nearest.kind)
    if nearest.ahead:
        maneuver = Maneuver.TAILGATING if belief.pre_crash else Maneuver.FOLLOWING
        return Scenario(Role.FOLLOWER, relation, maneuver, condition)
    maneuver = Maneuver.OVERTAKING_REQUEST if nearest.closing_speed > 0 else Maneuver.FOLLOWING
    return Scenario(Role.LEADER, relation, maneuver, condition)


def match_norm_rule(
    rules: Sequence[NormRule],
    belief: Belief,
    self_kind: ActorKind,
    other_kind: ActorKind | None = None,
    condition: str = "bright",
) -> NormRule:
    """First rule in table order whose pattern matches, else one of the fallback rules.

    Fallbacks: maintain distance from a stronger neighbor (fear), maintain a safe distance on
    any other pre-crash, keep course otherwise.
    """
    scenario = classify_scenario(belief, self_kind, other_kind, condition)
    if scenario is None:
        return DEFAULT_KEEP_COURSE_RULE
    for rule in rules:
        if rule.pattern is not None and rule.pattern.matches(scenario):
            return rule
    if scenario.relation is Relation.STRONGER:
        return DEFAULT_STRONGER_RULE
    if belief.pre_crash:
        return DEFAULT_SAFE_DISTANCE_RULE
    return DEFAULT_KEEP_COURSE_RULE
