"""Orienting the in-hand object: minimal rotation onto a named world axis."""

from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

from ..errors import DegenerateAxis, MissingPoints
from .types import AffordanceInstance

AXIS_BY_NAME = {
    "forward": np.array([1.0, 0.0, 0.0]),
    "backward": np.array([-1.0, 0.0, 0.0]),
    "left": np.array([0.0, 1.0, 0.0]),
    "right": np.array([0.0, -1.0, 0.0]),
    "upside": np.array([0.0, 0.0, 1.0]),
    "downside": np.array([0.0, 0.0, -1.0]),
}

_ALIGNED_TOL_RAD = 1e-6


def rotation_between(current_axis: np.ndarray, desired_axis: np.ndarray) -> np.ndarray:
    """Minimal rotation matrix taking one unit vector onto another."""
    a = np.asarray(current_axis, dtype=float)
    norm = np.linalg.norm(a)
    if norm < 1e-9:
        raise DegenerateAxis("the current axis has (near-)zero length")
    a = a / norm
    e = np.asarray(desired_axis, dtype=float)
    e = e / np.linalg.norm(e)

    cross = np.cross(a, e)
    sin_theta = np.linalg.norm(cross)
    cos_theta = float(np.dot(a, e))
    angle = float(np.arctan2(sin_theta, cos_theta))
    if angle < _ALIGNED_TOL_RAD:
        return np.eye(3)
    if sin_theta < 1e-12:
        # Antiparallel: rotate half a turn about a deterministic perpendicular.
        ref = np.array([0.0, 0.0, 1.0]) if abs(a[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        axis = np.cross(a, ref)
        axis = axis / np.linalg.norm(axis)
        return Rotation.from_rotvec(np.pi * axis).as_matrix()
    axis = cross / sin_theta
    return Rotation.from_rotvec(angle * axis).as_matrix()


def resolve_orientation(instance: AffordanceInstance) -> np.ndarray:
    """Rotation aligning the grasp-to-function axis with the named world axis.

    Raises MissingPoints when any of grasp point, function point, or the
    orientation tag is absent, and DegenerateAxis when the two points coincide.
    """
    if (
        instance.grasp_point is None
        or instance.function_point is None
        or instance.target_angle is None
    ):
        raise MissingPoints(
            "orientation needs grasp_point, function_point, and target_angle"
        )
    g = np.array([instance.grasp_point.x, instance.grasp_point.y, instance.grasp_point.z])
    f = np.array(
        [instance.function_point.x, instance.function_point.y, instance.function_point.z]
    )
    axis = f - g
    if np.linalg.norm(axis) < 1e-9:
        raise DegenerateAxis("grasp and function points coincide")
    return rotation_between(axis, AXIS_BY_NAME[instance.target_angle])


def yaw_component(rotation: np.ndarray) -> float:
    """The heading change a 4-DoF (yaw-only) wrist can realize from a rotation."""
    return float(np.arctan2(rotation[1, 0], rotation[0, 0]))
