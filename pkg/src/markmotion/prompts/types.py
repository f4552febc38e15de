"""Typed views of model requests and structured responses."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConsistencyViolation
from ..marks.grid import TileId

HEIGHT_OPTIONS = ("same", "above")
ANGLE_OPTIONS = ("forward", "backward", "upside", "downside", "left", "right")


@dataclass(frozen=True)
class TaskRequest:
    """A free-form instruction plus the scene image it refers to."""

    instruction: str
    initial_observation: np.ndarray | None = None

    def __post_init__(self):
        if not self.instruction.strip():
            raise ConsistencyViolation("task instruction must be non-empty")


@dataclass(frozen=True)
class SubtaskSpec:
    """One step of the decomposed task, as emitted by the first reasoning stage."""

    instruction: str
    object_grasped: str
    object_unattached: str
    motion_direction: str

    def __post_init__(self):
        if not self.object_grasped and not self.object_unattached:
            raise ConsistencyViolation(
                "a subtask must involve at least one object "
                "(object_grasped and object_unattached are both empty)"
            )

    def to_json_dict(self) -> dict:
        return {
            "instruction": self.instruction,
            "object_grasped": self.object_grasped,
            "object_unattached": self.object_unattached,
            "motion_direction": self.motion_direction,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "SubtaskSpec":
        return cls(
            instruction=str(payload["instruction"]),
            object_grasped=str(payload["object_grasped"]),
            object_unattached=str(payload["object_unattached"]),
            motion_direction=str(payload["motion_direction"]),
        )


@dataclass(frozen=True)
class HighLevelPlan:
    subtasks: tuple

    def __post_init__(self):
        if len(self.subtasks) < 1:
            raise ConsistencyViolation("a plan must contain at least one subtask")

    def to_json_list(self) -> list:
        return [s.to_json_dict() for s in self.subtasks]


@dataclass(frozen=True)
class AffordanceResponse:
    """Validated point/tile/height/orientation selections for one subtask.

    Empty selections are None. `rationale_text` keeps any free-form reasoning
    that preceded the JSON payload, for logging only.
    """

    grasp_keypoint: str | None = None
    function_keypoint: str | None = None
    target_keypoint: str | None = None
    pre_contact_tile: TileId | None = None
    post_contact_tile: TileId | None = None
    pre_contact_height: str | None = None
    post_contact_height: str | None = None
    target_angle: str | None = None
    rationale_text: str = ""

    def to_json_dict(self) -> dict:
        def tile(t):
            return t.name if t is not None else ""

        def txt(x):
            return x if x is not None else ""

        return {
            "grasp_keypoint": txt(self.grasp_keypoint),
            "function_keypoint": txt(self.function_keypoint),
            "target_keypoint": txt(self.target_keypoint),
            "pre_contact_tile": tile(self.pre_contact_tile),
            "post_contact_tile": tile(self.post_contact_tile),
            "pre_contact_height": txt(self.pre_contact_height),
            "post_contact_height": txt(self.post_contact_height),
            "target_angle": txt(self.target_angle),
        }


@dataclass(frozen=True)
class InContextExample:
    """A prior (request, annotated image, response) triple shown before the query."""

    annotated_image: np.ndarray
    request_text: str
    response_text: str

    def __eq__(self, other):
        return (
            isinstance(other, InContextExample)
            and self.request_text == other.request_text
            and self.response_text == other.response_text
            and np.array_equal(self.annotated_image, other.annotated_image)
        )


@dataclass(frozen=True)
class AblationConfig:
    disable_hierarchy: bool = False
    disable_point_description: bool = False
    disable_cot: bool = False

    def enabled_flags(self) -> list[str]:
        return [
            name
            for name, on in (
                ("disable_hierarchy", self.disable_hierarchy),
                ("disable_point_description", self.disable_point_description),
                ("disable_cot", self.disable_cot),
            )
            if on
        ]


DEFAULT_ABLATION = AblationConfig()
