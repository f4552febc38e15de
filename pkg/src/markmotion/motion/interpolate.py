"""Discretizing a motion plan into a fixed-rate stream of twist actions.

Straight segments follow a trapezoidal speed profile (accelerate, cruise,
decelerate); each emitted action carries the average velocity over its tick,
so integrating velocities at the control interval reproduces the via-points
exactly. Rotations happen in place at a constant angular rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from ..errors import PathTooLong
from .types import (
    ACCEL_MPS2,
    ANGULAR_RATE_RPS,
    APPROACH_CLEARANCE_M,
    Action,
    CONTROL_RATE_HZ,
    CRUISE_SPEED_MPS,
    GRIPPER_CLOSED_M,
    GRIPPER_OPEN_M,
    LIFT_AFTER_GRASP_M,
    MAX_STEPS_PER_PHASE,
    MotionPlan,
    Point3,
    Pose,
)

PHASE_GRASP = "grasp"
PHASE_MANIPULATION = "manipulation"


@dataclass(frozen=True)
class InterpolationResult:
    actions: tuple
    phase_bounds: dict  # phase name -> (first index, one past last)
    final_pose: Pose


def _trapezoid_positions(length: float, dt: float, max_speed: float, accel: float):
    """Cumulative distances at each tick for a trapezoidal profile over `length`."""
    if length <= 1e-12:
        return []
    v_peak = min(max_speed, math.sqrt(accel * length))
    t_ramp = v_peak / accel
    d_ramp = 0.5 * accel * t_ramp * t_ramp
    d_cruise = length - 2.0 * d_ramp
    t_cruise = d_cruise / v_peak
    t_total = 2.0 * t_ramp + t_cruise

    def s(t: float) -> float:
        if t >= t_total:
            return length
        if t <= t_ramp:
            return 0.5 * accel * t * t
        if t <= t_ramp + t_cruise:
            return d_ramp + v_peak * (t - t_ramp)
        remain = t_total - t
        return length - 0.5 * accel * remain * remain

    n = max(1, math.ceil(t_total / dt - 1e-9))
    return [s(k * dt) for k in range(1, n)] + [length]


class _Builder:
    def __init__(self, start: Pose, dt, max_speed, accel, angular_rate):
        self.position = np.array([start.position.x, start.position.y, start.position.z])
        self.yaw = float(start.yaw)
        self.aperture = float(start.aperture)
        self.dt = dt
        self.max_speed = max_speed
        self.accel = accel
        self.angular_rate = angular_rate
        self.actions: list = []

    def translate_to(self, dest) -> None:
        dest = np.asarray(dest, dtype=float)
        delta = dest - self.position
        length = float(np.linalg.norm(delta))
        if length <= 1e-12:
            return
        unit = delta / length
        prev = 0.0
        for dist in _trapezoid_positions(length, self.dt, self.max_speed, self.accel):
            step = (dist - prev) * unit
            prev = dist
            self.actions.append(
                Action(
                    vx=step[0] / self.dt,
                    vy=step[1] / self.dt,
                    vz=step[2] / self.dt,
                    gripper=self.aperture,
                )
            )
            self.position = self.position + step

    def rotate_by(self, rotvec) -> None:
        rotvec = np.asarray(rotvec, dtype=float)
        angle = float(np.linalg.norm(rotvec))
        if angle <= 1e-12:
            return
        n = max(1, math.ceil(angle / (self.angular_rate * self.dt) - 1e-9))
        prev_frac = 0.0
        for k in range(1, n + 1):
            frac = min(k * self.dt * self.angular_rate / angle, 1.0)
            w = rotvec * ((frac - prev_frac) / self.dt)
            prev_frac = frac
            self.actions.append(
                Action(wx=w[0], wy=w[1], wz=w[2], gripper=self.aperture)
            )
            self.yaw += float(w[2]) * self.dt

    def set_gripper(self, width: float) -> None:
        self.aperture = float(width)
        self.actions.append(Action(gripper=self.aperture))

    def pose(self) -> Pose:
        return Pose(
            position=Point3(*self.position), yaw=self.yaw, aperture=self.aperture
        )


def _wrap_jaw_yaw(delta: float) -> float:
    """Parallel jaws repeat every half turn; take the nearest equivalent."""
    while delta > math.pi / 2:
        delta -= math.pi
    while delta <= -math.pi / 2:
        delta += math.pi
    return delta


def interpolate(
    plan: MotionPlan,
    start: Pose,
    control_rate_hz: float = CONTROL_RATE_HZ,
    max_speed: float = CRUISE_SPEED_MPS,
    accel: float = ACCEL_MPS2,
    angular_rate: float = ANGULAR_RATE_RPS,
    max_steps_per_phase: int = MAX_STEPS_PER_PHASE,
    approach_clearance: float = APPROACH_CLEARANCE_M,
    lift_after_grasp: float = LIFT_AFTER_GRASP_M,
) -> InterpolationResult:
    """Emit the action stream realizing the plan from the start pose.

    Raises PathTooLong when either phase would exceed the per-phase step cap
    (the stream is never silently truncated).
    """
    dt = 1.0 / control_rate_hz
    b = _Builder(start, dt, max_speed, accel, angular_rate)
    bounds = {}

    if plan.has_grasp_phase:
        begin = len(b.actions)
        g = plan.grasp
        if b.aperture < GRIPPER_OPEN_M:
            b.set_gripper(GRIPPER_OPEN_M)
        b.rotate_by([0.0, 0.0, _wrap_jaw_yaw(g.yaw - b.yaw)])
        b.translate_to([g.position.x, g.position.y, g.position.z + approach_clearance])
        b.translate_to([g.position.x, g.position.y, g.position.z])
        b.set_gripper(GRIPPER_CLOSED_M)
        b.translate_to([g.position.x, g.position.y, g.position.z + lift_after_grasp])
        count = len(b.actions) - begin
        if count > max_steps_per_phase:
            raise PathTooLong(
                f"grasping phase needs {count} steps, over the {max_steps_per_phase}-step cap"
            )
        bounds[PHASE_GRASP] = (begin, len(b.actions))

    if plan.has_manipulation_phase:
        begin = len(b.actions)
        rotation = plan.rotation_matrix()
        rotvec = Rotation.from_matrix(rotation).as_rotvec()
        b.rotate_by(rotvec)
        off = plan.function_offset
        for via in plan.manipulation_path:
            b.translate_to([via.x - off.x, via.y - off.y, via.z - off.z])
        if plan.release_at_end:
            b.set_gripper(GRIPPER_OPEN_M)
        count = len(b.actions) - begin
        if count > max_steps_per_phase:
            raise PathTooLong(
                f"manipulation phase needs {count} steps, over the {max_steps_per_phase}-step cap"
            )
        bounds[PHASE_MANIPULATION] = (begin, len(b.actions))

    return InterpolationResult(
        actions=tuple(b.actions), phase_bounds=bounds, final_pose=b.pose()
    )


def integrate_actions(start: Pose, actions, control_rate_hz: float = CONTROL_RATE_HZ):
    """Kinematic reference integration: the pose after each action.

    This mirrors how the simulator consumes actions (position += twist * dt,
    yaw += wz * dt, aperture = gripper command) and serves as the oracle for
    interpolation tests.
    """
    dt = 1.0 / control_rate_hz
    position = np.array([start.position.x, start.position.y, start.position.z])
    yaw = float(start.yaw)
    aperture = float(start.aperture)
    poses = []
    for a in actions:
        position = position + np.array([a.vx, a.vy, a.vz]) * dt
        yaw += a.wz * dt
        aperture = float(a.gripper)
        poses.append(Pose(position=Point3(*position), yaw=yaw, aperture=aperture))
    return poses
