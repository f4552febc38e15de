"""Contour extraction, mask centroids, and farthest-point boundary sampling."""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from ..errors import DegenerateContour, EmptyMask
from .types import BinaryMask, Contour, Pixel

# 8-neighborhood as (du, dv) offsets, ordered counter-clockwise as the image is
# displayed (v grows downward): E, NE, N, NW, W, SW, S, SE.
_RING = np.array(
    [(1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1)], dtype=int
)
_RING_INDEX = {tuple(d): i for i, d in enumerate(_RING)}


def largest_component(mask: BinaryMask) -> BinaryMask:
    """Return the largest 8-connected foreground component (ties: first in raster order)."""
    if mask.count() == 0:
        raise EmptyMask("mask has no foreground pixels")
    labels, n = ndimage.label(mask.bits, structure=np.ones((3, 3), dtype=int))
    if n == 1:
        return BinaryMask(labels == 1)
    counts = np.bincount(labels.reshape(-1))
    counts[0] = 0
    best = int(np.argmax(counts))
    return BinaryMask(labels == best)


def extract_contour(mask: BinaryMask) -> Contour:
    """Trace the outer boundary of the largest foreground component.

    The walk starts at the component's topmost-then-leftmost pixel and proceeds
    counter-clockwise as the image is displayed (first step goes down the left
    side), using Moore neighbor tracing over the 8-neighborhood.
    """
    component = largest_component(mask).bits
    vs, us = np.nonzero(component)
    # nonzero scans rows top-down then columns left-right, so index 0 is
    # topmost-then-leftmost.
    start = (int(us[0]), int(vs[0]))

    height, width = component.shape

    def fg(u: int, v: int) -> bool:
        return 0 <= u < width and 0 <= v < height and bool(component[v, u])

    points = [start]
    # The row above the start pixel is background, so "north of start" is a
    # valid initial backtrack.
    backtrack = (start[0], start[1] - 1)
    current = start
    first_edge = None
    max_steps = 4 * int(component.sum()) + 8
    for _ in range(max_steps):
        b_dir = (backtrack[0] - current[0], backtrack[1] - current[1])
        scan_from = _RING_INDEX[b_dir] + 1
        next_pixel = None
        for offset in range(8):
            du, dv = _RING[(scan_from + offset) % 8]
            cand = (current[0] + du, current[1] + dv)
            if fg(*cand):
                next_pixel = cand
                break
            backtrack = cand
        if next_pixel is None:
            # isolated pixel
            return Contour(np.array(points, dtype=int))
        edge = (current, next_pixel)
        if first_edge is None:
            first_edge = edge
        elif edge == first_edge:
            # The walk re-entered its first directed move: the cycle closed.
            points.pop()  # drop the duplicated start appended last iteration
            return Contour(np.array(points, dtype=int))
        current = next_pixel
        points.append(current)
    raise DegenerateContour("contour tracing did not close; mask may be corrupt")


def mask_centroid(mask: BinaryMask) -> Pixel:
    """Mean foreground pixel, rounded half-up, snapped to the nearest foreground pixel.

    Snapping ties break in raster order (lowest v, then lowest u).
    """
    if mask.count() == 0:
        raise EmptyMask("mask has no foreground pixels")
    vs, us = np.nonzero(mask.bits)
    mu = math.floor(float(us.mean()) + 0.5)
    mv = math.floor(float(vs.mean()) + 0.5)
    if 0 <= mv < mask.height and 0 <= mu < mask.width and mask.bits[mv, mu]:
        return Pixel(int(mu), int(mv))
    d2 = (us.astype(np.int64) - mu) ** 2 + (vs.astype(np.int64) - mv) ** 2
    best = int(np.argmin(d2))
    return Pixel(int(us[best]), int(vs[best]))


def farthest_point_sampling(
    contour: Contour, k: int, centroid: Pixel | None = None
) -> list[Pixel]:
    """Pick k spread-out contour points by greedy max-min Euclidean selection.

    The seed is the contour point farthest from ``centroid`` (the mask centroid
    when sampling an object boundary; defaults to the rounded mean of the
    contour itself). All ties break toward the lowest contour index. Distances
    compare exactly because pixel coordinates are integers.
    """
    n = len(contour)
    if k < 1 or k > n:
        raise DegenerateContour(f"cannot sample {k} points from a contour of {n}")
    pts = contour.points.astype(np.int64)
    if centroid is None:
        centroid = Pixel(
            math.floor(float(pts[:, 0].mean()) + 0.5),
            math.floor(float(pts[:, 1].mean()) + 0.5),
        )
    ref = np.array([centroid.u, centroid.v], dtype=np.int64)
    d2_ref = ((pts - ref) ** 2).sum(axis=1)
    seed = int(np.argmax(d2_ref))  # first occurrence = lowest index on ties

    selected = [seed]
    min_d2 = ((pts - pts[seed]) ** 2).sum(axis=1)
    while len(selected) < k:
        nxt = int(np.argmax(min_d2))
        selected.append(nxt)
        d2 = ((pts - pts[nxt]) ** 2).sum(axis=1)
        min_d2 = np.minimum(min_d2, d2)
    return [Pixel(int(pts[i, 0]), int(pts[i, 1])) for i in selected]
