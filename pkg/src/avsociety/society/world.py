"""Vehicles moving on a torus: spawning, sensing, kinematics, collisions and the tick scheduler.

Agents update sequentially in ascending id order within a tick, so an agent senses the
positions of lower-id agents that already moved this tick.
"""

import math
from collections import Counter
from dataclasses import dataclass

import mesa
import numpy as np

from avsociety import Policy
from avsociety.config import ConfigurationError
from avsociety.emotion.occ import FearState
from avsociety.society.actions import YIELD_HEADING_OFFSET, Action, ActionKind
from avsociety.society.actors import CAR, TRUCK, ActorKind, Personality
from avsociety.society.belief import Belief, NeighborSnapshot
from avsociety.society.config import SimulationSettings, WorldConfig
from avsociety.society.policies import get_policy
from avsociety.utils.log import logger

PLACEMENT_ATTEMPTS_PER_AGENT = 1000


def wrap_coordinate(x: float, size: float) -> float:
    x = x % size
    # -1e-17 % 50 == 50.0
    if x >= size:
        return 0.0
    return x


def wrap_angle(angle: float) -> float:
    """Into (-pi, pi]."""
    angle = math.remainder(angle, 2 * math.pi)
    if angle <= -math.pi:
        angle += 2 * math.pi
    return angle


def torus_delta(delta: np.ndarray, size: float) -> np.ndarray:
    """Shortest displacement on the torus, elementwise."""
    return (delta + size / 2) % size - size / 2


class VehicleAgent(mesa.Agent):
    def __init__(
        self,
        model: "World",
        kind: ActorKind,
        personality: Personality,
        position: tuple[float, float],
        heading: float,
        velocity: float,
    ):
        super().__init__(model)
        self.kind = kind
        self.personality = personality
        self.position = position
        self.heading = heading
        self.velocity = velocity
        self.belief: Belief | None = None
        self.fear: FearState | None = None
        self.collisions = 0

    @property
    def agent_id(self) -> int:
        return self.unique_id

    @property
    def velocity_vector(self) -> np.ndarray:
        return self.velocity * np.array([math.cos(self.heading), math.sin(self.heading)])

    def __repr__(self) -> str:
        x, y = self.position
        return f"VehicleAgent({self.agent_id}, {self.kind.symbol}, ({x:.3f}, {y:.3f}), v={self.velocity:.3f})"


class World(mesa.Model):
    """The society of vehicles. Randomness comes only from ``generator``."""

    def __init__(
        self,
        cfg: WorldConfig,
        settings: SimulationSettings | None = None,
        *,
        rng: np.random.Generator | int | None = None,
        policy: Policy | str | None = None,
        trace: bool = False,
    ):
        super().__init__()
        self.cfg = cfg
        self.settings = settings or SimulationSettings()
        self.generator = np.random.default_rng(rng)
        self.tick = 0
        self.vehicles: list[VehicleAgent] = []
        self.trace = trace
        self.total_collisions = 0
        if policy is None or isinstance(policy, str):
            policy = get_policy(self, policy)
        self.policy: Policy = policy

    def add_vehicle(
        self,
        kind: ActorKind,
        position: tuple[float, float],
        heading: float = 0.0,
        velocity: float | None = None,
        personality: Personality | None = None,
    ) -> VehicleAgent:
        if personality is None:
            personality = Personality.for_kind(kind, self.settings.lambdas, self.settings.fear_thresholds)
        agent = VehicleAgent(
            self,
            kind,
            personality,
            (wrap_coordinate(position[0], self.cfg.world_size), wrap_coordinate(position[1], self.cfg.world_size)),
            heading % (2 * math.pi),
            self.cfg.min_velocity if velocity is None else velocity,
        )
        self.vehicles.append(agent)
        self.vehicles.sort(key=lambda a: a.agent_id)
        return agent

    def get_vehicle(self, agent_id: int) -> VehicleAgent:
        for agent in self.vehicles:
            if agent.agent_id == agent_id:
                return agent
        raise KeyError(agent_id)

    def positions(self) -> np.ndarray:
        """(N, 2) array in id order."""
        return np.array([agent.position for agent in self.vehicles], dtype=float).reshape(-1, 2)


def spawn_society(
    cfg: WorldConfig,
    rng: np.random.Generator | int | None = None,
    settings: SimulationSettings | None = None,
    *,
    kinds: list[ActorKind] | None = None,
    policy: Policy | str | None = None,
    trace: bool = False,
) -> World:
    """Place ``cfg.num_avs`` vehicles without initial overlap. Trucks get the lowest ids."""
    world = World(cfg, settings, rng=rng, policy=policy, trace=trace)
    if kinds is None:
        kinds = [TRUCK] * cfg.trucks + [CAR] * cfg.cars
    generator = world.generator
    size = cfg.world_size
    attempts_left = PLACEMENT_ATTEMPTS_PER_AGENT * len(kinds)
    placed = np.empty((0, 2))
    for kind in kinds:
        while True:
            if attempts_left == 0:
                raise ConfigurationError(
                    "num_avs", f"cannot place {len(kinds)} vehicles without overlap on a {size}x{size} world"
                )
            attempts_left -= 1
            candidate = generator.uniform(0, size, 2)
            distances = np.hypot(*torus_delta(placed - candidate, size).T) if len(placed) else np.empty(0)
            if np.all(distances > cfg.collision_radius):
                break
        placed = np.vstack([placed, candidate])
        heading = generator.uniform(0, 2 * math.pi)
        velocity = generator.uniform(cfg.min_velocity, cfg.max_velocity)
        world.add_vehicle(kind, (float(candidate[0]), float(candidate[1])), heading, velocity)
    logger.debug(f"Spawned {len(kinds)} vehicles ({cfg.mode} mode)")
    return world


def sense(world: World, agent: VehicleAgent) -> Belief:
    cfg = world.cfg
    others = [other for other in world.vehicles if other is not agent]
    if not others:
        return Belief.empty(world.tick, agent.agent_id, agent.velocity)
    here = np.array(agent.position)
    deltas = torus_delta(np.array([other.position for other in others]) - here, cfg.world_size)
    distances = np.hypot(deltas[:, 0], deltas[:, 1])
    own_velocity = agent.velocity_vector
    snapshots = []
    for other, delta, distance in zip(others, deltas, distances):
        if distance > cfg.sonar_range:
            continue
        relative_velocity = other.velocity_vector - own_velocity
        closing_speed = -float(delta @ relative_velocity) / distance if distance > 0 else 0.0
        bearing = wrap_angle(math.atan2(delta[1], delta[0]) - agent.heading) if distance > 0 else 0.0
        snapshots.append(NeighborSnapshot(other.agent_id, other.kind, float(distance), bearing, closing_speed))
    if not snapshots:
        return Belief.empty(world.tick, agent.agent_id, agent.velocity)
    snapshots.sort(key=lambda n: (n.distance, n.agent_id))
    nearest = snapshots[0]
    speed_norm = nearest.closing_speed / cfg.max_velocity if cfg.max_velocity > 0 else 0.0
    return Belief(
        tick=world.tick,
        scenario_id=f"{agent.agent_id}-{nearest.agent_id}",
        agent_id=agent.agent_id,
        velocity=agent.velocity,
        nearest=nearest,
        in_sonar=tuple(snapshots),
        pre_crash=nearest.distance < cfg.safety_distance,
        distance_norm=min(1.0, nearest.distance / cfg.sonar_range),
        speed_norm=float(np.clip(speed_norm, 0.0, 1.0)),
    )


def _turn_away(nearest: NeighborSnapshot | None) -> float:
    """Heading offset steering away from the side the neighbor is on."""
    if nearest is not None and nearest.bearing > 0:
        return -YIELD_HEADING_OFFSET
    return YIELD_HEADING_OFFSET


def apply_action(agent: VehicleAgent, action: Action, cfg: WorldConfig) -> VehicleAgent:
    """Change velocity and heading, then move one tick along the heading.

    MaintainSafeDistance and YieldPassage depend on the role against the nearest neighbor.
    Inside the safety distance a follower (neighbor ahead) brakes while a leader (neighbor
    behind) speeds up, or turns away once at max velocity. A yielding follower brakes and a
    yielding leader keeps its speed; both turn away from the neighbor.
    """
    deceleration = cfg.deceleration_rate if action.magnitude is None else action.magnitude
    velocity, heading = agent.velocity, agent.heading
    nearest = agent.belief.nearest if agent.belief is not None else None
    match action.kind:
        case ActionKind.DECELERATE:
            velocity -= deceleration
        case ActionKind.ACCELERATE:
            velocity += cfg.acceleration_rate if action.magnitude is None else action.magnitude
        case ActionKind.MAINTAIN_SAFE_DISTANCE:
            if nearest is not None and nearest.distance < cfg.safety_distance:
                if nearest.ahead:
                    velocity -= deceleration
                elif velocity < cfg.max_velocity:
                    velocity += cfg.acceleration_rate
                else:
                    heading += _turn_away(nearest)
        case ActionKind.YIELD_PASSAGE:
            if nearest is None or nearest.ahead:
                velocity -= deceleration
            heading += _turn_away(nearest)
        case ActionKind.RANDOM_TURN:
            velocity += action.magnitude or 0.0
            heading += action.heading_offset
    agent.velocity = min(cfg.max_velocity, max(cfg.min_velocity, velocity))
    agent.heading = heading % (2 * math.pi)
    x, y = agent.position
    agent.position = (
        wrap_coordinate(x + agent.velocity * math.cos(agent.heading), cfg.world_size),
        wrap_coordinate(y + agent.velocity * math.sin(agent.heading), cfg.world_size),
    )
    return agent


def collision_pairs(positions: np.ndarray, ids: list[int], radius: float, size: float) -> list[tuple[int, int]]:
    """Unordered pairs closer than ``radius`` on the torus, as (lower id, higher id), ids ascending."""
    n = len(ids)
    if n < 2:
        return []
    deltas = torus_delta(positions[:, None, :] - positions[None, :, :], size)
    distances = np.hypot(deltas[..., 0], deltas[..., 1])
    rows, cols = np.triu_indices(n, k=1)
    hits = distances[rows, cols] < radius
    pairs = [(ids[i], ids[j]) for i, j in zip(rows[hits], cols[hits])]
    return sorted((min(a, b), max(a, b)) for a, b in pairs)


def detect_collisions(world: World) -> list[tuple[int, int]]:
    """Count-and-continue: both participants' counters increment, nobody is removed."""
    ids = [agent.agent_id for agent in world.vehicles]
    events = collision_pairs(world.positions(), ids, world.cfg.collision_radius, world.cfg.world_size)
    by_id = {agent.agent_id: agent for agent in world.vehicles}
    for a, b in events:
        by_id[a].collisions += 1
        by_id[b].collisions += 1
    world.total_collisions += len(events)
    return events


@dataclass(frozen=True)
class DecisionRecord:
    agent_id: int
    kind: str
    x: float
    y: float
    velocity: float
    action: str
    rule: str | None = None
    fear: FearState | None = None


@dataclass(frozen=True)
class TickReport:
    tick: int
    events: tuple[tuple[int, int], ...] = ()
    decisions: tuple[DecisionRecord, ...] = ()
    """Only filled when the world traces."""

    @property
    def collisions(self) -> int:
        return len(self.events)

    def trace_rows(self, mode: str) -> list[dict]:
        involved = Counter(agent_id for pair in self.events for agent_id in pair)
        return [
            {
                "tick": self.tick,
                "agent_id": d.agent_id,
                "kind": d.kind,
                "x": d.x,
                "y": d.y,
                "velocity": d.velocity,
                "mode": mode,
                "fw": d.fear.willingness if d.fear is not None else None,
                "action": d.action,
                "collisions_this_tick": involved[d.agent_id],
            }
            for d in self.decisions
        ]

    def appraisal_rows(self) -> list[dict]:
        return [
            d.fear.as_row(self.tick, d.agent_id) | {"rule": d.rule} for d in self.decisions if d.fear is not None
        ]


def step(world: World, rng: np.random.Generator | None = None) -> TickReport:
    """One tick: every agent senses, decides and moves in id order, then collisions are counted."""
    rng = world.generator if rng is None else rng
    records = []
    for agent in list(world.vehicles):
        agent.belief = sense(world, agent)
        decision = world.policy.decide(agent, agent.belief, rng)
        agent.fear = decision.fear
        apply_action(agent, decision.action, world.cfg)
        if world.trace:
            x, y = agent.position
            records.append(
                DecisionRecord(
                    agent.agent_id,
                    agent.kind.symbol,
                    x,
                    y,
                    agent.velocity,
                    str(decision.action),
                    decision.rule.name if decision.rule is not None else None,
                    decision.fear,
                )
            )
    events = detect_collisions(world)
    report = TickReport(world.tick, tuple(events), tuple(records))
    world.tick += 1
    return report


def export_snapshot(world: World) -> str:
    """Plain text, one vehicle per line."""
    lines = [f"# tick {world.tick} mode {world.cfg.mode} vehicles {len(world.vehicles)}"]
    lines.append("id kind x y heading velocity collisions")
    for agent in world.vehicles:
        x, y = agent.position
        lines.append(
            f"{agent.agent_id} {agent.kind.symbol} {x:.6f} {y:.6f} {agent.heading:.6f} "
            f"{agent.velocity:.6f} {agent.collisions}"
        )
    return "\n".join(lines) + "\n"
