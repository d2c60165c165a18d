"""The vehicle society: actors, sensing, norms, decision policies and the tick scheduler."""

from avsociety.society.actions import KEEP_COURSE, Action, ActionKind
from avsociety.society.actors import ACTOR_CATALOG, CAR, TRUCK, ActorKind, Dominance, Personality, get_kind
from avsociety.society.belief import Belief, NeighborSnapshot
from avsociety.society.config import SimulationSettings, WorldConfig, load_settings
from avsociety.society.norms import NORM_RULES, NormRule, match_norm_rule
from avsociety.society.policies import Decision, decide_norm, decide_random_walk, get_policy, get_policy_class
from avsociety.society.world import (
    TickReport,
    VehicleAgent,
    World,
    apply_action,
    detect_collisions,
    export_snapshot,
    sense,
    spawn_society,
    step,
)

__all__ = [
    "ACTOR_CATALOG",
    "CAR",
    "KEEP_COURSE",
    "NORM_RULES",
    "TRUCK",
    "Action",
    "ActionKind",
    "ActorKind",
    "Belief",
    "Decision",
    "Dominance",
    "NeighborSnapshot",
    "NormRule",
    "Personality",
    "SimulationSettings",
    "TickReport",
    "VehicleAgent",
    "World",
    "WorldConfig",
    "apply_action",
    "decide_norm",
    "decide_random_walk",
    "detect_collisions",
    "export_snapshot",
    "get_kind",
    "get_policy",
    "get_policy_class",
    "load_settings",
    "match_norm_rule",
    "sense",
    "spawn_society",
    "step",
]
