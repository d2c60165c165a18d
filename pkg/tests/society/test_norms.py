import math

import pytest

from avsociety.society.actions import ActionKind
from avsociety.society.actors import CAR, TRUCK
from avsociety.society.belief import Belief, NeighborSnapshot
from avsociety.society.config import WorldConfig
from avsociety.society.norms import (
    DEFAULT_KEEP_COURSE_RULE,
    DEFAULT_SAFE_DISTANCE_RULE,
    DEFAULT_STRONGER_RULE,
    NORM_RULES,
    Emotion,
    Maneuver,
    NormRule,
    Relation,
    Role,
    assist_overtaking,
    classify_scenario,
    match_norm_rule,
    relation_of,
    side_clear,
    speed_up,
    two_second_rule,
)

AHEAD, LEFT, BEHIND, RIGHT = 0.0, math.pi / 2, math.pi, -math.pi / 2


def neighbor(agent_id=2, kind=TRUCK, distance=1.5, bearing=AHEAD, closing_speed=0.0):
    return NeighborSnapshot(agent_id, kind, distance, bearing, closing_speed)


def belief_with(nearest, *others, pre_crash=False, velocity=0.5):
    in_sonar = tuple(sorted((nearest, *others), key=lambda n: (n.distance, n.agent_id)))
    return Belief(
        tick=0,
        scenario_id=f"1-{nearest.agent_id}",
        agent_id=1,
        velocity=velocity,
        nearest=nearest,
        in_sonar=in_sonar,
        pre_crash=pre_crash,
    )


def test_rule_table():
    names = [rule.name for rule in NORM_RULES]
    assert len(names) == 8
    assert len(set(names)) == 8
    assert all(rule.predicates for rule in NORM_RULES if rule.is_fear)


def test_relation_of():
    assert relation_of(CAR, TRUCK) is Relation.STRONGER
    assert relation_of(TRUCK, CAR) is Relation.WEAKER
    assert relation_of(CAR, CAR) is Relation.EQUAL


@pytest.mark.parametrize(
    ("bearing", "closing", "pre_crash", "role", "maneuver"),
    [
        (AHEAD, 0.0, False, Role.FOLLOWER, Maneuver.FOLLOWING),
        (AHEAD, 0.2, True, Role.FOLLOWER, Maneuver.TAILGATING),
        (BEHIND, 0.1, False, Role.LEADER, Maneuver.OVERTAKING_REQUEST),
        (BEHIND, -0.1, False, Role.LEADER, Maneuver.FOLLOWING),
    ],
)
def test_classify_scenario(bearing, closing, pre_crash, role, maneuver):
    belief = belief_with(neighbor(bearing=bearing, closing_speed=closing), pre_crash=pre_crash)
    scenario = classify_scenario(belief, CAR, condition="rainy")
    assert scenario.role is role
    assert scenario.maneuver is maneuver
    assert scenario.relation is Relation.STRONGER
    assert scenario.condition == "rainy"


def test_classify_without_neighbor():
    assert classify_scenario(Belief.empty(0, 1, 0.3), CAR) is None


@pytest.mark.parametrize(
    ("self_kind", "other_kind", "bearing", "closing", "pre_crash", "condition", "expected"),
    [
        (CAR, TRUCK, AHEAD, 0.0, False, "bright", "follower-of-stronger-bright"),
        (CAR, TRUCK, AHEAD, 0.0, False, "rainy", "follower-of-stronger-rainy"),
        (CAR, TRUCK, AHEAD, 0.2, True, "bright", "tailgating-stronger"),
        (TRUCK, CAR, AHEAD, 0.2, True, "bright", "tailgating-weaker"),
        (CAR, CAR, AHEAD, 0.0, False, "bright", "follower-of-equal"),
        (TRUCK, CAR, BEHIND, 0.1, False, "bright", "weaker-overtakes-leader"),
        (CAR, TRUCK, BEHIND, 0.1, False, "bright", "stronger-overtakes-leader"),
        (TRUCK, TRUCK, BEHIND, 0.1, False, "bright", "equal-overtakes-leader"),
    ],
)
def test_match_norm_rule(self_kind, other_kind, bearing, closing, pre_crash, condition, expected):
    belief = belief_with(neighbor(kind=other_kind, bearing=bearing, closing_speed=closing), pre_crash=pre_crash)
    assert match_norm_rule(NORM_RULES, belief, self_kind, condition=condition).name == expected


def test_fallback_rules():
    leader_of_stronger = belief_with(neighbor(kind=TRUCK, bearing=BEHIND, closing_speed=-0.1))
    assert match_norm_rule(NORM_RULES, leader_of_stronger, CAR) is DEFAULT_STRONGER_RULE
    follower_of_weaker = belief_with(neighbor(kind=CAR, bearing=AHEAD))
    assert match_norm_rule(NORM_RULES, follower_of_weaker, TRUCK) is DEFAULT_KEEP_COURSE_RULE
    assert match_norm_rule(NORM_RULES, Belief.empty(0, 1, 0.3), TRUCK) is DEFAULT_KEEP_COURSE_RULE
    assert DEFAULT_KEEP_COURSE_RULE.comply is ActionKind.KEEP_COURSE
    assert DEFAULT_STRONGER_RULE.is_fear


def test_unmatched_pre_crash_keeps_a_safe_distance():
    leader_of_equal = belief_with(neighbor(kind=CAR, bearing=BEHIND, closing_speed=-0.1, distance=0.3), pre_crash=True)
    assert match_norm_rule(NORM_RULES, leader_of_equal, CAR) is DEFAULT_SAFE_DISTANCE_RULE
    follower_of_weaker = belief_with(neighbor(kind=CAR, bearing=AHEAD), pre_crash=False)
    assert match_norm_rule(NORM_RULES, follower_of_weaker, TRUCK) is DEFAULT_KEEP_COURSE_RULE
    assert DEFAULT_SAFE_DISTANCE_RULE.comply is ActionKind.MAINTAIN_SAFE_DISTANCE
    assert not DEFAULT_SAFE_DISTANCE_RULE.is_fear


def test_other_kind_overrides_the_sensed_kind():
    belief = belief_with(neighbor(kind=CAR, bearing=AHEAD))
    assert match_norm_rule(NORM_RULES, belief, CAR, other_kind=TRUCK).name == "follower-of-stronger-bright"


def test_side_clear():
    cfg = WorldConfig(safety_distance=3)
    nearest = neighbor(agent_id=2, distance=0.5)
    assert side_clear(belief_with(nearest), cfg)
    assert not side_clear(belief_with(nearest, neighbor(agent_id=3, distance=1.0, bearing=LEFT)), cfg)
    assert side_clear(belief_with(nearest, neighbor(agent_id=3, distance=1.0, bearing=RIGHT)), cfg)
    assert side_clear(belief_with(nearest, neighbor(agent_id=3, distance=3.5, bearing=LEFT)), cfg)


def test_two_second_rule_doubles_in_rain():
    nearest = neighbor(agent_id=2, distance=0.5)
    behind = neighbor(agent_id=3, distance=1.5, bearing=BEHIND)
    belief = belief_with(nearest, behind, velocity=0.5)
    assert two_second_rule(belief, WorldConfig(condition="bright"))
    assert not two_second_rule(belief, WorldConfig(condition="rainy"))
    close_behind = belief_with(nearest, neighbor(agent_id=3, distance=0.8, bearing=BEHIND), velocity=0.5)
    assert not two_second_rule(close_behind, WorldConfig())


def test_speed_up():
    nearest = neighbor(agent_id=2, distance=0.5)
    assert speed_up(belief_with(nearest), WorldConfig())
    assert not speed_up(belief_with(nearest, neighbor(agent_id=3, distance=2.0, bearing=AHEAD)), WorldConfig())
    assert speed_up(belief_with(nearest, neighbor(agent_id=3, distance=2.0, bearing=BEHIND)), WorldConfig())


def test_assist_overtaking():
    nearest = neighbor(agent_id=2, distance=0.5)
    closing = neighbor(agent_id=3, distance=2.0, bearing=BEHIND, closing_speed=0.1)
    receding = neighbor(agent_id=3, distance=2.0, bearing=BEHIND, closing_speed=-0.1)
    assert not assist_overtaking(belief_with(nearest, closing), WorldConfig())
    assert assist_overtaking(belief_with(nearest, receding), WorldConfig())


def test_road_norms_hold_requires_every_predicate():
    rule = next(r for r in NORM_RULES if r.name == "tailgating-weaker")
    nearest = neighbor(agent_id=2, distance=0.5)
    assert rule.road_norms_hold(belief_with(nearest), WorldConfig())
    blocked = belief_with(nearest, neighbor(agent_id=3, distance=1.0, bearing=LEFT))
    assert not rule.road_norms_hold(blocked, WorldConfig())


def test_unknown_road_norm():
    with pytest.raises(ValueError, match="Unknown road norm"):
        NormRule("bad", "nothing", None, Emotion.FEAR, p="fly-over")
