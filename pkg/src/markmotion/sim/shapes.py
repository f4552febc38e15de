"""Planar convex-polygon helpers used by the simulator."""

from __future__ import annotations

import math

import numpy as np

Polygon = tuple[tuple[float, float], ...]


def transform_polygon(
    local: Polygon, x: float, y: float, yaw: float
) -> np.ndarray:
    """Local-frame vertices rotated by yaw and translated to (x, y)."""
    pts = np.asarray(local, dtype=float)
    c, s = math.cos(yaw), math.sin(yaw)
    rot = np.array([[c, -s], [s, c]])
    return pts @ rot.T + np.array([x, y])


def polygon_centroid(vertices: np.ndarray) -> tuple[float, float]:
    """Area centroid of a simple polygon (shoelace formula)."""
    pts = np.asarray(vertices, dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    cross = pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]
    area = cross.sum() / 2.0
    if abs(area) < 1e-12:
        return float(pts[:, 0].mean()), float(pts[:, 1].mean())
    cx = ((pts[:, 0] + nxt[:, 0]) * cross).sum() / (6.0 * area)
    cy = ((pts[:, 1] + nxt[:, 1]) * cross).sum() / (6.0 * area)
    return float(cx), float(cy)


def _axes(pts: np.ndarray) -> np.ndarray:
    edges = np.roll(pts, -1, axis=0) - pts
    normals = np.stack([-edges[:, 1], edges[:, 0]], axis=1)
    lengths = np.linalg.norm(normals, axis=1)
    keep = lengths > 1e-12
    return normals[keep] / lengths[keep, None]


def convex_overlap(a: np.ndarray, b: np.ndarray) -> bool:
    """Separating-axis intersection test for two convex polygons."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    for axis in np.concatenate([_axes(a), _axes(b)]):
        pa = a @ axis
        pb = b @ axis
        if pa.max() < pb.min() or pb.max() < pa.min():
            return False
    return True


def line_chord(
    vertices: np.ndarray, origin: tuple[float, float], direction: tuple[float, float]
) -> tuple[float, float] | None:
    """Intersection interval of the line origin + t*direction with a convex hull.

    Returns (t_enter, t_exit) in signed line parameters, or None when the line
    misses the polygon. The polygon is treated as the intersection of the
    half-planes defined by its edges, so vertex order may be CW or CCW.
    """
    pts = np.asarray(vertices, dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    # Ensure CCW orientation so inward normals are consistent.
    cross = (pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]).sum()
    if cross < 0:
        pts = pts[::-1]
        nxt = np.roll(pts, -1, axis=0)
    o = np.asarray(origin, dtype=float)
    d = np.asarray(direction, dtype=float)
    t_lo, t_hi = -math.inf, math.inf
    for p, q in zip(pts, nxt):
        edge = q - p
        normal = np.array([-edge[1], edge[0]])  # inward for CCW
        denom = float(normal @ d)
        offset = float(normal @ (o - p))
        if abs(denom) < 1e-12:
            if offset < -1e-12:
                return None  # parallel and outside this half-plane
            continue
        t = -offset / denom
        if denom > 0:
            t_lo = max(t_lo, t)
        else:
            t_hi = min(t_hi, t)
        if t_lo > t_hi:
            return None
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)):
        return None
    return t_lo, t_hi


def square_polygon(
    x: float, y: float, side: float, yaw: float = 0.0
) -> np.ndarray:
    half = side / 2.0
    local = ((-half, -half), (half, -half), (half, half), (-half, half))
    return transform_polygon(local, x, y, yaw)


def rectangle(width: float, depth: float) -> Polygon:
    """Axis-aligned local footprint centered at the origin."""
    hw, hd = width / 2.0, depth / 2.0
    return ((-hw, -hd), (hw, -hd), (hw, hd), (-hw, hd))


def regular_polygon(radius: float, sides: int) -> Polygon:
    return tuple(
        (
            radius * math.cos(2 * math.pi * i / sides),
            radius * math.sin(2 * math.pi * i / sides),
        )
        for i in range(sides)
    )


def vertical_overlap(a_lo: float, a_hi: float, b_lo: float, b_hi: float) -> bool:
    return a_lo <= b_hi and b_lo <= a_hi
