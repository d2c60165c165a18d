"""Decision policies, one per run mode.

``random-walk`` is the baseline society without norms. ``norms`` runs the fear-driven
norm-compliance loop: appraise fear, compare the willingness against the egoist threshold,
escalate once on a pre-crash, and act on the social norm only when its road norms hold.
"""

import importlib
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from avsociety import Policy
from avsociety.emotion.occ import AppraisalInputs, FearConfig, FearState, FisSet, appraise, appraise_constants
from avsociety.society.actions import KEEP_COURSE, Action, ActionKind
from avsociety.society.belief import Belief
from avsociety.society.config import WorldConfig
from avsociety.society.norms import NORM_RULES, NormRule, match_norm_rule

if TYPE_CHECKING:
    from avsociety.society.world import VehicleAgent, World

RANDOM_TURN_LIMIT = math.pi / 4


@dataclass(frozen=True)
class Decision:
    action: Action
    rule: NormRule | None = None
    fear: FearState | None = None
    """The appraisal the decision was made on, None when no fear was computed."""


def decide_random_walk(agent: "VehicleAgent", belief: Belief, rng: np.random.Generator) -> Action:
    """Random heading and velocity perturbation, blind to the belief."""
    offset = rng.uniform(-RANDOM_TURN_LIMIT, RANDOM_TURN_LIMIT)
    rate = agent.model.cfg.acceleration_rate
    delta = rng.uniform(-rate, rate)
    return Action(ActionKind.RANDOM_TURN, magnitude=float(delta), heading_offset=float(offset))


def appraisal_inputs(agent: "VehicleAgent", belief: Belief, cfg: WorldConfig) -> AppraisalInputs:
    """Belief-driven inputs for the three fuzzy legs."""
    return AppraisalInputs(
        imp_goal=agent.personality.goal_importance,
        ach_goal=min(1.0, belief.tick / max(1, cfg.ticks_per_run)),
        distance=belief.distance_norm,
        speed=belief.speed_norm,
        sense_of_reality=cfg.sense_of_reality,
        proximity=belief.distance_norm,
    )


def willing(willingness: float, lam: float) -> bool:
    """Is the fear willingness at or above the egoist threshold?

    With the default sliders a car lands exactly on its threshold (0.3) and a truck lands on
    its own (0.6) after a pre-crash, up to float rounding in the fuzzy pipeline. Those count
    as at the threshold.
    """
    return willingness >= lam or math.isclose(willingness, lam)


def _appraise(
    agent: "VehicleAgent",
    belief: Belief,
    fis_set: FisSet | None,
    cfg: WorldConfig,
    fear_cfg: FearConfig,
    likelihood: float | None = None,
) -> FearState:
    threshold = agent.personality.fear_threshold
    if cfg.dynamic_appraisal:
        if fis_set is None:
            raise ValueError("Dynamic appraisal needs the fuzzy inference systems")
        inputs = appraisal_inputs(agent, belief, cfg)
        return appraise(inputs, fis_set, fear_cfg, threshold=threshold, likelihood_override=likelihood)
    return appraise_constants(
        cfg.ud, cfg.li if likelihood is None else likelihood, cfg.ig, fear_cfg, threshold=threshold
    )


def decide_norm(
    agent: "VehicleAgent",
    belief: Belief,
    rule: NormRule,
    fis_set: FisSet | None,
    cfg: WorldConfig,
    fear_cfg: FearConfig | None = None,
) -> Decision:
    if not rule.is_fear:
        return Decision(Action(rule.comply), rule)
    fear_cfg = fear_cfg or FearConfig()
    lam = agent.personality.lam
    fear = _appraise(agent, belief, fis_set, cfg, fear_cfg)
    if not willing(fear.willingness, lam):
        if not belief.pre_crash:
            return Decision(KEEP_COURSE, rule, fear)
        # A pre-crash counts as a highly likely event.
        fear = _appraise(agent, belief, fis_set, cfg, fear_cfg, likelihood=1.0)
        if not willing(fear.willingness, lam):
            return Decision(KEEP_COURSE, rule, fear)
    if rule.road_norms_hold(belief, cfg):
        return Decision(Action(rule.comply), rule, fear)
    return Decision(Action(rule.violate), rule, fear)


class RandomWalkPolicy:
    name = "random-walk"

    def __init__(self, world: "World"):
        self.world = world

    def decide(self, agent: "VehicleAgent", belief: Belief, rng: np.random.Generator) -> Decision:
        return Decision(decide_random_walk(agent, belief, rng))


class NormPolicy:
    name = "norms"

    def __init__(self, world: "World", rules: tuple[NormRule, ...] = NORM_RULES):
        self.world = world
        self.rules = rules
        self.fis_set = world.settings.fuzzy.build() if world.cfg.dynamic_appraisal else None

    def decide(self, agent: "VehicleAgent", belief: Belief, rng: np.random.Generator) -> Decision:
        cfg = self.world.cfg
        rule = match_norm_rule(self.rules, belief, agent.kind, condition=cfg.condition)
        return decide_norm(agent, belief, rule, self.fis_set, cfg, self.world.settings.fear)


_POLICY_MAPPING = {
    "random-walk": "avsociety.society.policies.RandomWalkPolicy",
    "norms": "avsociety.society.policies.NormPolicy",
}


def get_policy_class(spec: str) -> type[Policy]:
    full_path = _POLICY_MAPPING.get(spec, spec)
    try:
        module_name, class_name = full_path.rsplit(".", 1)
        module = importlib.import_module(module_name)
        return getattr(module, class_name)
    except (ValueError, ImportError, AttributeError):
        msg = f"Unknown policy: {spec} (resolved to {full_path}, available: {_POLICY_MAPPING})"
        raise ValueError(msg)


def get_policy(world: "World", spec: str | None = None) -> Policy:
    """Policy instance for ``spec``, defaulting to the world's run mode."""
    return get_policy_class(spec or world.cfg.mode)(world)
