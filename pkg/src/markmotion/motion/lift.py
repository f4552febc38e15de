"""Lifting validated 2D selections into world-frame 3D points."""

from __future__ import annotations

from ..geometry import CameraModel, DepthImage, Point3, deproject, depth_at, pixel_ray_at_height
from ..marks.grid import sample_point_in_tile
from ..marks.keypoints import MarkSet, resolve_selection
from ..prompts.types import AffordanceResponse
from .types import AffordanceInstance, H_ABOVE_DEFAULT_M


def _lift_label(label, markset, depth, cam) -> Point3 | None:
    if label is None:
        return None
    pixel = resolve_selection(markset, label).pixel
    d = depth_at(depth, pixel)
    return deproject(pixel, d, cam, world=True)


def lift_affordance(
    resp: AffordanceResponse,
    markset: MarkSet,
    depth: DepthImage,
    cam: CameraModel,
    rng_seed: int,
    h_above: float = H_ABOVE_DEFAULT_M,
) -> AffordanceInstance:
    """Deproject keypoints at their measured depth and waypoints at a height
    tied to the target: equal for "same", raised by `h_above` for "above".

    Waypoint pixels are drawn uniformly inside the selected tiles with
    deterministic seeds (`rng_seed` for pre, `rng_seed + 1` for post).
    """
    grasp = _lift_label(resp.grasp_keypoint, markset, depth, cam)
    function = _lift_label(resp.function_keypoint, markset, depth, cam)
    target = _lift_label(resp.target_keypoint, markset, depth, cam)

    pre = post = None
    if target is not None:
        grid = markset.grid
        pre_pixel = sample_point_in_tile(grid, resp.pre_contact_tile, seed=rng_seed)
        post_pixel = sample_point_in_tile(grid, resp.post_contact_tile, seed=rng_seed + 1)
        pre_z = target.z + (h_above if resp.pre_contact_height == "above" else 0.0)
        post_z = target.z + (h_above if resp.post_contact_height == "above" else 0.0)
        pre = pixel_ray_at_height(pre_pixel, pre_z, cam)
        post = pixel_ray_at_height(post_pixel, post_z, cam)

    return AffordanceInstance(
        grasp_point=grasp,
        function_point=function,
        target_point=target,
        pre_contact=pre,
        post_contact=post,
        target_angle=resp.target_angle,
    )
