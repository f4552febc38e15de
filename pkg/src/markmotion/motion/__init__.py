"""Affordance lifting, grasp/manipulation planning, and action interpolation."""

from .interpolate import (
    InterpolationResult,
    PHASE_GRASP,
    PHASE_MANIPULATION,
    integrate_actions,
    interpolate,
)
from .lift import lift_affordance
from .orientation import AXIS_BY_NAME, resolve_orientation, rotation_between, yaw_component
from .planning import compile_motion, infer_release, plan_grasp_phase, plan_manipulation_phase
from .types import (
    ACCEL_MPS2,
    ANGULAR_RATE_RPS,
    APPROACH_CLEARANCE_M,
    Action,
    AffordanceInstance,
    CONTROL_DT_S,
    CONTROL_RATE_HZ,
    CRUISE_SPEED_MPS,
    GRIPPER_CLOSED_M,
    GRIPPER_OPEN_M,
    GraspPose,
    H_ABOVE_DEFAULT_M,
    LIFT_AFTER_GRASP_M,
    MAX_STEPS_PER_PHASE,
    MotionPlan,
    Pose,
    read_actions_jsonl,
    write_actions_jsonl,
)

__all__ = [
    "InterpolationResult",
    "PHASE_GRASP",
    "PHASE_MANIPULATION",
    "integrate_actions",
    "interpolate",
    "lift_affordance",
    "AXIS_BY_NAME",
    "resolve_orientation",
    "rotation_between",
    "yaw_component",
    "compile_motion",
    "infer_release",
    "plan_grasp_phase",
    "plan_manipulation_phase",
    "ACCEL_MPS2",
    "ANGULAR_RATE_RPS",
    "APPROACH_CLEARANCE_M",
    "Action",
    "AffordanceInstance",
    "CONTROL_DT_S",
    "CONTROL_RATE_HZ",
    "CRUISE_SPEED_MPS",
    "GRIPPER_CLOSED_M",
    "GRIPPER_OPEN_M",
    "GraspPose",
    "H_ABOVE_DEFAULT_M",
    "LIFT_AFTER_GRASP_M",
    "MAX_STEPS_PER_PHASE",
    "MotionPlan",
    "Pose",
    "read_actions_jsonl",
    "write_actions_jsonl",
]
