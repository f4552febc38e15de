"""Pinhole projection, deprojection, and depth lookup with local fallback."""

from __future__ import annotations

import numpy as np

from ..errors import BehindCamera, InvalidDepth
from .types import CameraModel, DepthImage, Pixel, Point3, DEPTH_SENTINEL


def deproject(pixel: Pixel, depth: float, cam: CameraModel, world: bool = False) -> Point3:
    """Lift a pixel at a known depth to 3D.

    Depth is the camera-frame z of the point. Returns camera-frame coordinates,
    or world coordinates when ``world`` is set.
    """
    if depth <= 0:
        raise InvalidDepth(f"depth must be positive, got {depth}")
    x = (pixel.u - cam.cx) * depth / cam.fx
    y = (pixel.v - cam.cy) * depth / cam.fy
    p = np.array([x, y, depth])
    if world:
        p = cam.rotation @ p + cam.translation
    return Point3(float(p[0]), float(p[1]), float(p[2]))


def project(point: Point3, cam: CameraModel, world: bool = False) -> Pixel:
    """Project a 3D point to continuous pixel coordinates.

    ``world`` says the input is in world coordinates and must first be moved
    into the camera frame. Points at or behind the image plane are rejected.
    """
    p = np.asarray(point, dtype=float)
    if world:
        p = cam.rotation.T @ (p - cam.translation)
    if p[2] <= 0:
        raise BehindCamera(f"point has camera-frame z={p[2]:.6g}")
    u = cam.fx * p[0] / p[2] + cam.cx
    v = cam.fy * p[1] / p[2] + cam.cy
    return Pixel(float(u), float(v))


def depth_at(depth: DepthImage, pixel: Pixel, window: int = 5) -> float:
    """Depth at an integer pixel, with invalid readings patched locally.

    A sentinel reading falls back to the median of valid depths in a
    ``window`` x ``window`` neighborhood clipped to the image. If the whole
    neighborhood is invalid, InvalidDepth is raised.
    """
    u, v = int(round(pixel.u)), int(round(pixel.v))
    if not (0 <= u < depth.width and 0 <= v < depth.height):
        raise InvalidDepth(f"pixel ({u}, {v}) outside a {depth.width}x{depth.height} image")
    value = float(depth.data[v, u])
    if value != DEPTH_SENTINEL:
        return value
    half = window // 2
    patch = depth.data[
        max(0, v - half) : min(depth.height, v + half + 1),
        max(0, u - half) : min(depth.width, u + half + 1),
    ]
    valid = patch[patch != DEPTH_SENTINEL]
    if valid.size == 0:
        raise InvalidDepth(f"no valid depth within a {window}x{window} window of ({u}, {v})")
    return float(np.median(valid))


def pixel_ray_at_height(pixel: Pixel, z_world: float, cam: CameraModel) -> Point3:
    """World point where the ray through a pixel crosses the plane z = z_world.

    Used to place waypoints whose height is prescribed rather than observed.
    """
    d_cam = np.array([(pixel.u - cam.cx) / cam.fx, (pixel.v - cam.cy) / cam.fy, 1.0])
    d_world = cam.rotation @ d_cam
    if abs(d_world[2]) < 1e-12:
        raise InvalidDepth("pixel ray is parallel to the requested height plane")
    s = (z_world - cam.translation[2]) / d_world[2]
    if s <= 0:
        raise InvalidDepth("requested height plane is behind the camera")
    p = cam.translation + s * d_world
    return Point3(float(p[0]), float(p[1]), float(p[2]))
