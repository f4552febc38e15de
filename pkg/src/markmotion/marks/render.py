"""Pixel-deterministic drawing of mark sets onto RGB images."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch
from ..geometry import write_rgb_png
from . import font
from .grid import GridSpec, tile_bounds
from .keypoints import MarkSet, ROLE_GRASPED

DOT_RADIUS_PX = 6
CAPTION_HEIGHT_PX = font.GLYPH_HEIGHT  # 14
GRID_LINE_COLOR = (160, 160, 160)
TILE_LABEL_COLOR = (90, 90, 90)
GRASPED_COLOR = (255, 0, 0)
UNATTACHED_COLOR = (0, 0, 255)

# Caption anchors prefer sitting just right-and-above their dot; collisions
# walk outward over rings of eight compass offsets, nearest ring first.
_PREFERRED_OFFSET = (DOT_RADIUS_PX + 2, -DOT_RADIUS_PX - 2 - CAPTION_HEIGHT_PX)
_COMPASS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
_RING_STEP_PX = 5
_MAX_RINGS = 120


@dataclass(frozen=True)
class AnnotatedImage:
    pixels: np.ndarray
    markset: MarkSet

    def save(self, png_path: str | Path, markset_path: str | Path | None = None) -> None:
        write_rgb_png(self.pixels, png_path)
        if markset_path is not None:
            self.markset.save(markset_path)


def _draw_disk(image: np.ndarray, center_uv, radius: int, color) -> None:
    h, w = image.shape[:2]
    cu, cv = int(center_uv[0]), int(center_uv[1])
    u0, u1 = max(0, cu - radius), min(w, cu + radius + 1)
    v0, v1 = max(0, cv - radius), min(h, cv + radius + 1)
    if u0 >= u1 or v0 >= v1:
        return
    vv, uu = np.mgrid[v0:v1, u0:u1]
    disk = (uu - cu) ** 2 + (vv - cv) ** 2 <= radius * radius
    image[v0:v1, u0:u1][disk] = color


def _boxes_overlap(a, b) -> bool:
    return not (a[1] <= b[0] or b[1] <= a[0] or a[3] <= b[2] or b[3] <= a[2])


def _place_caption(
    anchor_uv, text: str, width: int, height: int, taken: list
) -> tuple[int, int]:
    """First in-frame, non-colliding top-left for a caption, searched on a
    deterministic outward spiral from the preferred offset."""
    tw, th = font.text_size(text)
    base_u = anchor_uv[0] + _PREFERRED_OFFSET[0]
    base_v = anchor_uv[1] + _PREFERRED_OFFSET[1]
    for ring in range(_MAX_RINGS + 1):
        offsets = [(0, 0)] if ring == 0 else [
            (dx * ring * _RING_STEP_PX, dy * ring * _RING_STEP_PX) for dx, dy in _COMPASS
        ]
        for du, dv in offsets:
            u, v = base_u + du, base_v + dv
            if not (0 <= u and u + tw <= width and 0 <= v and v + th <= height):
                continue
            box = (u, u + tw, v, v + th)
            if any(_boxes_overlap(box, other) for other in taken):
                continue
            taken.append(box)
            return u, v
    # Nothing free within the search budget: clamp into the frame regardless.
    u = min(max(0, base_u), width - tw)
    v = min(max(0, base_v), height - th)
    taken.append((u, u + tw, v, v + th))
    return u, v


def render_marks(image: np.ndarray, markset: MarkSet) -> AnnotatedImage:
    """Draw the grid, tile names, candidate dots, and dot captions.

    P candidates draw red, Q candidates blue; tile names sit at each tile's
    top-left corner; captions never overlap each other and always stay inside
    the frame. The output is a new array; the input is untouched.
    """
    canvas = np.asarray(image, dtype=np.uint8).copy()
    if canvas.ndim != 3 or canvas.shape[2] != 3:
        raise DimensionMismatch(f"expected an RGB image, got shape {canvas.shape}")
    h, w = canvas.shape[:2]
    grid: GridSpec = markset.grid
    if (w, h) != (grid.width, grid.height):
        raise DimensionMismatch(
            f"image is {w}x{h} but the mark set was built for {grid.width}x{grid.height}"
        )

    for u in grid.u_edges[1:-1]:
        canvas[:, u] = GRID_LINE_COLOR
    for v in grid.v_edges[1:-1]:
        canvas[v, :] = GRID_LINE_COLOR

    for tile in grid.all_tiles():
        u0, _, v0, _ = tile_bounds(grid, tile)
        font.draw_text(canvas, (u0 + 3, v0 + 3), tile.name, TILE_LABEL_COLOR)

    taken: list = []
    for cand in markset.candidates:
        color = GRASPED_COLOR if cand.role == ROLE_GRASPED else UNATTACHED_COLOR
        _draw_disk(canvas, (cand.pixel.u, cand.pixel.v), DOT_RADIUS_PX, color)
    for cand in markset.candidates:
        color = GRASPED_COLOR if cand.role == ROLE_GRASPED else UNATTACHED_COLOR
        pos = _place_caption(
            (int(cand.pixel.u), int(cand.pixel.v)), cand.label, w, h, taken
        )
        font.draw_text(canvas, pos, cand.label, color)

    return AnnotatedImage(pixels=canvas, markset=markset)
