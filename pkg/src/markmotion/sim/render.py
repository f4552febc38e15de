"""Top-down rendering of scene state into RGB, depth, and instance masks.

Objects are extruded convex polygons; each is drawn as its top face projected
through the camera, back-to-front by top height (painter's algorithm), so the
tallest surface wins every pixel. Depth is the camera-frame range to the top
plane along each pixel ray, matching the deprojection convention used by the
rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from PIL import Image, ImageDraw

from ..geometry import BinaryMask, DepthImage
from .shapes import square_polygon, transform_polygon
from .types import SceneSpec

TABLE_COLOR = (206, 203, 196)
GRIPPER_COLOR = (55, 55, 65)

_TABLE_INDEX = -1
_GRIPPER_INDEX = -2


@dataclass(frozen=True)
class RenderResult:
    """One rendered observation of the scene."""

    rgb: np.ndarray
    depth: DepthImage
    masks: dict[str, BinaryMask]

    def mask_for(self, name: str) -> BinaryMask:
        return self.masks[name]


def _ray_z_components(camera, width: int, height: int) -> np.ndarray:
    """World-frame z component of each pixel's (unnormalized) view ray."""
    us = (np.arange(width, dtype=float) - camera.cx) / camera.fx
    vs = (np.arange(height, dtype=float) - camera.cy) / camera.fy
    r = np.asarray(camera.rotation)
    return r[2, 0] * us[None, :] + r[2, 1] * vs[:, None] + r[2, 2]


def _project_vertices(camera, vertices_xy: np.ndarray, z: float) -> list[tuple[float, float]]:
    pts = np.column_stack([vertices_xy, np.full(len(vertices_xy), z)])
    cam_pts = (pts - np.asarray(camera.translation)) @ np.asarray(camera.rotation)
    us = camera.fx * cam_pts[:, 0] / cam_pts[:, 2] + camera.cx
    vs = camera.fy * cam_pts[:, 1] / cam_pts[:, 2] + camera.cy
    return [(float(u), float(v)) for u, v in zip(us, vs)]


def _fill_polygon(pixel_vertices: list[tuple[float, float]], width: int, height: int) -> np.ndarray:
    canvas = Image.new("L", (width, height), 0)
    ImageDraw.Draw(canvas).polygon(pixel_vertices, fill=1)
    return np.asarray(canvas, dtype=bool)


def render_scene(
    scene: SceneSpec,
    poses: Mapping[str, tuple[float, float, float, float]],
    gripper: tuple[float, float, float, float] | None = None,
) -> RenderResult:
    """Render the scene with objects at ``poses`` (x, y, yaw, z_base).

    ``gripper`` is (x, y, z, yaw); pass None to leave it out of the frame.
    """
    width, height = scene.image_size
    camera = scene.camera
    t_z = float(np.asarray(camera.translation)[2])
    ray_z = _ray_z_components(camera, width, height)

    rgb = np.empty((height, width, 3), dtype=np.uint8)
    rgb[:] = TABLE_COLOR
    depth = (0.0 - t_z) / ray_z
    owner = np.full((height, width), _TABLE_INDEX, dtype=np.int32)

    layers: list[tuple[float, int, int, np.ndarray, tuple[int, int, int]]] = []
    for index, spec in enumerate(scene.objects):
        x, y, yaw, z_base = poses[spec.name]
        top = z_base + spec.height
        world = transform_polygon(spec.footprint, x, y, yaw)
        layers.append((top, index, index, world, spec.color))
    if gripper is not None:
        gx, gy, gz, gyaw = gripper
        top = gz + scene.gripper.finger_halfheight
        world = square_polygon(gx, gy, scene.gripper.footprint_size, gyaw)
        layers.append((top, len(scene.objects), _GRIPPER_INDEX, world, GRIPPER_COLOR))

    layers.sort(key=lambda item: (item[0], item[1]))
    for top, _, owner_index, world, color in layers:
        pixel_vertices = _project_vertices(camera, world, top)
        filled = _fill_polygon(pixel_vertices, width, height)
        if not filled.any():
            continue
        rgb[filled] = color
        depth[filled] = (top - t_z) / ray_z[filled]
        owner[filled] = owner_index

    masks = {
        spec.name: BinaryMask(owner == index)
        for index, spec in enumerate(scene.objects)
    }
    return RenderResult(rgb=rgb, depth=DepthImage(depth), masks=masks)
