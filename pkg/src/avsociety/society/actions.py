import math
from dataclasses import dataclass
from enum import Enum


class ActionKind(str, Enum):
    KEEP_COURSE = "KeepCourse"
    DECELERATE = "Decelerate"
    ACCELERATE = "Accelerate"
    YIELD_PASSAGE = "YieldPassage"
    MAINTAIN_SAFE_DISTANCE = "MaintainSafeDistance"
    RANDOM_TURN = "RandomTurn"


YIELD_HEADING_OFFSET = math.radians(15)


@dataclass(frozen=True)
class Action:
    kind: ActionKind
    magnitude: float | None = None
    """Velocity change. None means the configured acceleration/deceleration rate."""
    heading_offset: float = 0.0

    def __str__(self) -> str:
        return self.kind.value


KEEP_COURSE = Action(ActionKind.KEEP_COURSE)
