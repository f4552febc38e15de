"""Executable motion representations: lifted points, plans, and actions."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import ConsistencyViolation
from ..geometry import Point3

CONTROL_RATE_HZ = 5.0
CONTROL_DT_S = 1.0 / CONTROL_RATE_HZ
CRUISE_SPEED_MPS = 0.15
ACCEL_MPS2 = 0.5
ANGULAR_RATE_RPS = 1.2
MAX_STEPS_PER_PHASE = 100
H_ABOVE_DEFAULT_M = 0.15
APPROACH_CLEARANCE_M = 0.06
LIFT_AFTER_GRASP_M = 0.06
GRIPPER_OPEN_M = 0.085
GRIPPER_CLOSED_M = 0.0


@dataclass(frozen=True)
class AffordanceInstance:
    """The selected points lifted into the world frame, plus the orientation tag."""

    grasp_point: Point3 | None = None
    function_point: Point3 | None = None
    target_point: Point3 | None = None
    pre_contact: Point3 | None = None
    post_contact: Point3 | None = None
    target_angle: str | None = None

    def __post_init__(self):
        has_target = self.target_point is not None
        if (self.pre_contact is not None) != has_target or (
            self.post_contact is not None
        ) != has_target:
            raise ConsistencyViolation(
                "pre/post contact waypoints must be present exactly when the "
                "target point is present"
            )
        if self.function_point is not None and (
            self.grasp_point is None or not has_target
        ):
            raise ConsistencyViolation(
                "a function point requires both a grasp point and a target point"
            )
        if self.target_angle is not None and (
            self.grasp_point is None or self.function_point is None
        ):
            raise ConsistencyViolation(
                "an orientation requires both grasp and function points"
            )
        if self.grasp_point is None and not has_target:
            raise ConsistencyViolation("an affordance must command at least one phase")

    def to_json_dict(self) -> dict:
        def pt(p):
            return [p.x, p.y, p.z] if p is not None else None

        return {
            "grasp_point": pt(self.grasp_point),
            "function_point": pt(self.function_point),
            "target_point": pt(self.target_point),
            "pre_contact": pt(self.pre_contact),
            "post_contact": pt(self.post_contact),
            "target_angle": self.target_angle,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "AffordanceInstance":
        def pt(v):
            return Point3(*v) if v is not None else None

        return cls(
            grasp_point=pt(d["grasp_point"]),
            function_point=pt(d["function_point"]),
            target_point=pt(d["target_point"]),
            pre_contact=pt(d["pre_contact"]),
            post_contact=pt(d["post_contact"]),
            target_angle=d["target_angle"],
        )


@dataclass(frozen=True)
class GraspPose:
    """A 4-DoF top-down grasp: position, yaw about vertical, and jaw width."""

    position: Point3
    yaw: float
    width: float


@dataclass(frozen=True)
class Pose:
    """Gripper state used as interpolation origin: position + yaw + aperture."""

    position: Point3
    yaw: float = 0.0
    aperture: float = GRIPPER_OPEN_M


@dataclass(frozen=True)
class MotionPlan:
    """A two-phase plan; either phase may be absent.

    `manipulation_path` holds the function point's via-points in order
    [pre_contact, target, post_contact]. `function_offset` is the world-frame
    vector from the gripper to the function point once yaw alignment is
    applied; the gripper tracks `via_point - function_offset`.
    """

    grasp: GraspPose | None = None
    manipulation_path: tuple | None = None
    manipulation_rotation: tuple = (
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, 0.0, 1.0),
    )
    function_offset: Point3 = Point3(0.0, 0.0, 0.0)
    release_at_end: bool = False

    def __post_init__(self):
        if self.grasp is None and self.manipulation_path is None:
            raise ConsistencyViolation("a plan must include at least one phase")
        if self.manipulation_path is not None and len(self.manipulation_path) != 3:
            raise ConsistencyViolation(
                "the manipulation path is exactly [pre_contact, target, post_contact]"
            )
        if self.release_at_end and self.grasp is None:
            raise ConsistencyViolation("cannot release without a grasping phase")

    @property
    def has_grasp_phase(self) -> bool:
        return self.grasp is not None

    @property
    def has_manipulation_phase(self) -> bool:
        return self.manipulation_path is not None

    def rotation_matrix(self) -> np.ndarray:
        return np.asarray(self.manipulation_rotation, dtype=float)

    def to_json_dict(self) -> dict:
        return {
            "grasp": (
                {
                    "position": [self.grasp.position.x, self.grasp.position.y, self.grasp.position.z],
                    "yaw": self.grasp.yaw,
                    "width": self.grasp.width,
                }
                if self.grasp is not None
                else None
            ),
            "manipulation_path": (
                [[p.x, p.y, p.z] for p in self.manipulation_path]
                if self.manipulation_path is not None
                else None
            ),
            "manipulation_rotation": [list(r) for r in self.manipulation_rotation],
            "function_offset": [
                self.function_offset.x,
                self.function_offset.y,
                self.function_offset.z,
            ],
            "release_at_end": self.release_at_end,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MotionPlan":
        grasp = None
        if d["grasp"] is not None:
            grasp = GraspPose(
                position=Point3(*d["grasp"]["position"]),
                yaw=float(d["grasp"]["yaw"]),
                width=float(d["grasp"]["width"]),
            )
        path = None
        if d["manipulation_path"] is not None:
            path = tuple(Point3(*p) for p in d["manipulation_path"])
        return cls(
            grasp=grasp,
            manipulation_path=path,
            manipulation_rotation=tuple(tuple(float(x) for x in row) for row in d["manipulation_rotation"]),
            function_offset=Point3(*d["function_offset"]),
            release_at_end=bool(d["release_at_end"]),
        )


@dataclass(frozen=True)
class Action:
    """One control tick: 6-DoF end-effector twist plus a gripper width command."""

    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    wx: float = 0.0
    wy: float = 0.0
    wz: float = 0.0
    gripper: float = GRIPPER_OPEN_M

    def as_vector(self) -> list:
        return [self.vx, self.vy, self.vz, self.wx, self.wy, self.wz, self.gripper]

    @classmethod
    def from_vector(cls, v) -> "Action":
        v = list(v)
        if len(v) != 7:
            raise ConsistencyViolation(f"an action has exactly 7 components, got {len(v)}")
        return cls(*[float(x) for x in v])


def write_actions_jsonl(actions, path, dt: float = CONTROL_DT_S) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for i, a in enumerate(actions):
            f.write(json.dumps({"t": round(i * dt, 6), "action": a.as_vector()}) + "\n")


def read_actions_jsonl(path) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(Action.from_vector(json.loads(line)["action"]))
    return out
