import math
from types import SimpleNamespace

import numpy as np
import pytest

from avsociety.emotion.occ import FearConfig
from avsociety.society.actions import KEEP_COURSE, ActionKind
from avsociety.society.actors import CAR, TRUCK, Personality
from avsociety.society.belief import Belief, NeighborSnapshot
from avsociety.society.config import WorldConfig
from avsociety.society.norms import NORM_RULES
from avsociety.society.policies import (
    RANDOM_TURN_LIMIT,
    NormPolicy,
    RandomWalkPolicy,
    appraisal_inputs,
    decide_norm,
    decide_random_walk,
    get_policy,
    get_policy_class,
    willing,
)
from avsociety.society.world import World, apply_action, sense

RULES = {rule.name: rule for rule in NORM_RULES}


def make_agent(kind):
    return SimpleNamespace(kind=kind, personality=Personality.for_kind(kind))


def make_belief(*others, pre_crash=False, tick=0):
    nearest = NeighborSnapshot(2, TRUCK, 1.0, 0.0, 0.1)
    return Belief(
        tick=tick,
        scenario_id="1-2",
        agent_id=1,
        velocity=0.5,
        nearest=nearest,
        in_sonar=(nearest, *others),
        pre_crash=pre_crash,
        distance_norm=0.5,
        speed_norm=0.2,
    )


def test_random_walk_is_bounded_and_seeded():
    world = World(WorldConfig(acceleration_rate=0.2))
    agent = world.add_vehicle(CAR, (10.0, 10.0))
    belief = Belief.empty(0, agent.agent_id, agent.velocity)
    actions = [decide_random_walk(agent, belief, np.random.default_rng(5)) for _ in range(2)]
    assert actions[0] == actions[1]
    rng = np.random.default_rng(0)
    for _ in range(200):
        action = decide_random_walk(agent, belief, rng)
        assert action.kind is ActionKind.RANDOM_TURN
        assert abs(action.magnitude) <= 0.2
        assert abs(action.heading_offset) <= RANDOM_TURN_LIMIT


def test_car_complies_with_default_sliders():
    decision = decide_norm(make_agent(CAR), make_belief(), RULES["follower-of-stronger-bright"], None, WorldConfig())
    assert decision.action.kind is ActionKind.MAINTAIN_SAFE_DISTANCE
    assert decision.fear.willingness == pytest.approx(0.3)
    assert decision.rule.name == "follower-of-stronger-bright"


def test_truck_keeps_course_without_pre_crash():
    decision = decide_norm(make_agent(TRUCK), make_belief(), RULES["tailgating-weaker"], None, WorldConfig())
    assert decision.action == KEEP_COURSE
    assert decision.fear.willingness == pytest.approx(0.3)


def test_pre_crash_escalates_the_truck():
    belief = make_belief(pre_crash=True)
    decision = decide_norm(make_agent(TRUCK), belief, RULES["tailgating-weaker"], None, WorldConfig())
    assert decision.action.kind is ActionKind.MAINTAIN_SAFE_DISTANCE
    assert decision.fear.likelihood == 1.0
    assert decision.fear.willingness == pytest.approx(0.6)


def test_low_sliders_keep_course_even_on_pre_crash():
    cfg = WorldConfig(ig=0.1)
    decision = decide_norm(make_agent(TRUCK), make_belief(pre_crash=True), RULES["tailgating-weaker"], None, cfg)
    assert decision.action == KEEP_COURSE


def test_violation_when_road_norms_fail():
    blocker = NeighborSnapshot(3, CAR, 2.0, 0.1, 0.0)
    decision = decide_norm(make_agent(CAR), make_belief(blocker), RULES["follower-of-equal"], None, WorldConfig())
    assert decision.action == KEEP_COURSE


@pytest.mark.parametrize(
    ("willingness", "lam", "expected"),
    [
        ((0.1 + 0.1 + 1.0) / 3 - 0.1, 0.3, True),
        ((0.1 + 1.0 + 1.0) / 3 - 0.1, 0.6, True),
        (0.7, 0.6, True),
        (0.2999, 0.3, False),
        (0.0, 0.0, True),
    ],
)
def test_willing_counts_the_threshold_itself(willingness, lam, expected):
    assert willing(willingness, lam) is expected


def test_yield_when_road_norms_hold():
    decision = decide_norm(make_agent(CAR), make_belief(), RULES["follower-of-equal"], None, WorldConfig())
    assert decision.action.kind is ActionKind.YIELD_PASSAGE


def test_non_fear_rule_skips_appraisal():
    decision = decide_norm(make_agent(TRUCK), make_belief(), RULES["weaker-overtakes-leader"], None, WorldConfig())
    assert decision.action.kind is RULES["weaker-overtakes-leader"].comply
    assert decision.fear is None


def test_combiner_changes_the_outcome():
    decision = decide_norm(
        make_agent(CAR),
        make_belief(),
        RULES["follower-of-stronger-bright"],
        None,
        WorldConfig(),
        FearConfig(combiner="min"),
    )
    assert decision.action == KEEP_COURSE


def test_dynamic_appraisal_needs_fuzzy_systems():
    cfg = WorldConfig(dynamic_appraisal=True)
    with pytest.raises(ValueError, match="fuzzy"):
        decide_norm(make_agent(CAR), make_belief(), RULES["follower-of-stronger-bright"], None, cfg)


def test_dynamic_appraisal(fis_set):
    cfg = WorldConfig(dynamic_appraisal=True)
    decision = decide_norm(make_agent(CAR), make_belief(), RULES["follower-of-stronger-bright"], fis_set, cfg)
    assert 0.0 <= decision.fear.potential <= 1.0
    assert decision.fear.willingness == pytest.approx(max(0.0, decision.fear.potential - 0.1))


def test_appraisal_inputs():
    inputs = appraisal_inputs(make_agent(CAR), make_belief(tick=250), WorldConfig(ticks_per_run=1000))
    assert inputs.ach_goal == pytest.approx(0.25)
    assert inputs.imp_goal == 0.5
    assert inputs.distance == inputs.proximity == 0.5
    assert inputs.speed == 0.2
    assert inputs.sense_of_reality == 0.9


def test_policy_registry():
    assert get_policy_class("random-walk") is RandomWalkPolicy
    assert get_policy_class("norms") is NormPolicy
    assert get_policy_class("avsociety.society.policies.NormPolicy") is NormPolicy
    with pytest.raises(ValueError, match="Unknown policy"):
        get_policy_class("teleport")


def test_get_policy_defaults_to_mode():
    world = World(WorldConfig(metacognition=True))
    assert isinstance(get_policy(world), NormPolicy)
    assert isinstance(get_policy(world, "random-walk"), RandomWalkPolicy)


def test_norm_policy_builds_fuzzy_systems_only_when_needed():
    assert NormPolicy(World(WorldConfig(metacognition=True))).fis_set is None
    assert NormPolicy(World(WorldConfig(metacognition=True, dynamic_appraisal=True))).fis_set is not None


def test_norm_policy_decides_for_a_real_agent():
    world = World(WorldConfig(metacognition=True))
    car = world.add_vehicle(CAR, (10.0, 10.0), heading=0.0, velocity=0.5)
    world.add_vehicle(TRUCK, (11.0, 10.0), heading=0.0, velocity=0.3)
    decision = world.policy.decide(car, sense(world, car), world.generator)
    assert decision.rule.name == "tailgating-stronger"
    assert decision.action.kind is ActionKind.YIELD_PASSAGE
    assert math.isclose(decision.fear.willingness, 0.3, abs_tol=1e-9)


def test_leader_with_stronger_follower_speeds_up():
    world = World(WorldConfig(metacognition=True, safety_distance=3))
    car = world.add_vehicle(CAR, (11.0, 10.0), heading=0.0, velocity=0.3)
    world.add_vehicle(TRUCK, (10.0, 10.0), heading=0.0, velocity=0.3)
    car.belief = sense(world, car)
    decision = world.policy.decide(car, car.belief, world.generator)
    assert decision.rule.name == "default-stronger"
    apply_action(car, decision.action, world.cfg)
    assert car.velocity == pytest.approx(0.4)
