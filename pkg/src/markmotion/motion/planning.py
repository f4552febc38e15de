"""Compiling lifted affordances into a two-phase motion plan."""

from __future__ import annotations

import numpy as np

from ..errors import MissingPoints
from ..geometry import (
    BinaryMask,
    CameraModel,
    DepthImage,
    Point3,
    nearest_grasp,
    sample_antipodal_grasps,
)
from .orientation import resolve_orientation, yaw_component
from .types import AffordanceInstance, GraspPose, MotionPlan


def plan_grasp_phase(
    instance: AffordanceInstance,
    depth: DepthImage,
    mask: BinaryMask,
    cam: CameraModel,
    rng_seed: int = 0,
) -> GraspPose:
    """Sample 30 antipodal proposals on the grasped object's mask and take the
    one nearest the predicted grasp point."""
    if instance.grasp_point is None:
        raise MissingPoints("cannot plan a grasping phase without a grasp point")
    proposals = sample_antipodal_grasps(depth, mask, cam, seed=rng_seed)
    chosen = nearest_grasp(proposals, instance.grasp_point)
    return GraspPose(position=chosen.center, yaw=chosen.yaw, width=chosen.width)


def plan_manipulation_phase(instance: AffordanceInstance):
    """Via-points [pre_contact, target, post_contact] plus the constant
    orientation held through the phase (identity when no orientation is
    requested or nothing is in hand)."""
    if instance.target_point is None:
        raise MissingPoints("cannot plan a manipulation phase without a target point")
    if instance.pre_contact is None or instance.post_contact is None:
        raise MissingPoints("manipulation needs both pre- and post-contact waypoints")
    path = (instance.pre_contact, instance.target_point, instance.post_contact)
    if instance.target_angle is not None:
        rotation = resolve_orientation(instance)
    else:
        rotation = np.eye(3)
    return path, rotation


def infer_release(instance: AffordanceInstance, post_contact_height) -> bool:
    """Open the gripper at the end for place-like motions.

    A motion that ends above the contact height deposits the held object
    (placing); one that ends at contact height keeps using it (sweeping,
    wiping, dragging).
    """
    return instance.grasp_point is not None and post_contact_height == "above"


def compile_motion(
    instance: AffordanceInstance,
    grasp: GraspPose | None,
    post_contact_height=None,
) -> MotionPlan:
    """Assemble the full plan from the lifted points and the chosen grasp.

    The function point's offset from the gripper is taken at grasp time and
    rotated by the yaw component of the requested orientation — the part of
    the alignment a top-down 4-DoF wrist realizes.
    """
    if (instance.grasp_point is not None) != (grasp is not None):
        raise MissingPoints(
            "a grasp pose must be supplied exactly when a grasp point is present"
        )

    path = None
    rotation = np.eye(3)
    offset = Point3(0.0, 0.0, 0.0)
    if instance.target_point is not None:
        path, rotation = plan_manipulation_phase(instance)
        if grasp is not None and instance.function_point is not None:
            raw_offset = np.array(
                [
                    instance.function_point.x - grasp.position.x,
                    instance.function_point.y - grasp.position.y,
                    instance.function_point.z - grasp.position.z,
                ]
            )
            dyaw = yaw_component(rotation)
            cos_y, sin_y = np.cos(dyaw), np.sin(dyaw)
            rz = np.array([[cos_y, -sin_y, 0.0], [sin_y, cos_y, 0.0], [0.0, 0.0, 1.0]])
            offset = Point3(*(rz @ raw_offset))

    return MotionPlan(
        grasp=grasp,
        manipulation_path=path,
        manipulation_rotation=tuple(tuple(float(x) for x in row) for row in rotation),
        function_offset=offset,
        release_at_end=infer_release(instance, post_contact_height),
    )
