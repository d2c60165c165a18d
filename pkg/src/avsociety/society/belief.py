"""What an agent knows about its surroundings at one tick."""

import math
from dataclasses import dataclass

from avsociety.society.actors import ActorKind


@dataclass(frozen=True)
class NeighborSnapshot:
    agent_id: int
    kind: ActorKind
    distance: float
    bearing: float
    """Angle to the neighbor relative to own heading, counter-clockwise, in (-pi, pi]."""
    closing_speed: float
    """Positive while the gap shrinks."""

    @property
    def ahead(self) -> bool:
        return abs(self.bearing) <= math.pi / 2


@dataclass(frozen=True)
class Belief:
    tick: int
    scenario_id: str
    agent_id: int
    velocity: float
    nearest: NeighborSnapshot | None = None
    in_sonar: tuple[NeighborSnapshot, ...] = ()
    """Sorted by (distance, agent id)."""
    pre_crash: bool = False
    distance_norm: float = 1.0
    speed_norm: float = 0.0

    @classmethod
    def empty(cls, tick: int, agent_id: int, velocity: float) -> "Belief":
        return cls(tick=tick, scenario_id=f"{agent_id}-none", agent_id=agent_id, velocity=velocity)

    def others(self) -> tuple[NeighborSnapshot, ...]:
        """In-sonar neighbors except the nearest one."""
        if self.nearest is None:
            return ()
        return tuple(n for n in self.in_sonar if n.agent_id != self.nearest.agent_id)
