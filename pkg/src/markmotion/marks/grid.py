"""Uniform image tiling named in chess style: lettered columns, numbered rows.

Columns run a, b, c, ... left to right; rows run 1, 2, 3, ... bottom to top,
so tile "a1" is the bottom-left corner of the image. Tiles are half-open pixel
rectangles; when the image size does not divide evenly, the leftover pixels go
to the band at the image's right/bottom edge (for rows that is chess row 1).
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

import numpy as np

from ..errors import MalformedTile, TileOutOfRange
from ..geometry import Pixel

DEFAULT_GRID_ROWS = 5
DEFAULT_GRID_COLS = 5


@dataclass(frozen=True)
class TileId:
    """One grid cell: 0-based column index, 1-based row counted from the bottom."""

    col: int
    row: int

    @property
    def name(self) -> str:
        return f"{string.ascii_lowercase[self.col]}{self.row}"


@dataclass(frozen=True)
class GridSpec:
    rows: int
    cols: int
    width: int
    height: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid must have at least one row and one column")
        if self.cols > 26:
            raise ValueError("columns are single letters; at most 26 supported")
        if self.width < self.cols or self.height < self.rows:
            raise ValueError("image too small for the requested tiling")

    @property
    def u_edges(self) -> list[int]:
        t = self.width // self.cols
        return [i * t for i in range(self.cols)] + [self.width]

    @property
    def v_edges(self) -> list[int]:
        t = self.height // self.rows
        return [i * t for i in range(self.rows)] + [self.height]

    def column_names(self) -> list[str]:
        return list(string.ascii_lowercase[: self.cols])

    def row_names(self) -> list[str]:
        return [str(r) for r in range(1, self.rows + 1)]

    def all_tiles(self) -> list[TileId]:
        return [TileId(c, r) for r in range(1, self.rows + 1) for c in range(self.cols)]

    def to_json_dict(self) -> dict:
        return {"m": self.rows, "n": self.cols, "w": self.width, "h": self.height}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "GridSpec":
        return cls(
            rows=int(payload["m"]), cols=int(payload["n"]),
            width=int(payload["w"]), height=int(payload["h"]),
        )


def build_grid(
    width: int, height: int, rows: int = DEFAULT_GRID_ROWS, cols: int = DEFAULT_GRID_COLS
) -> GridSpec:
    return GridSpec(rows=rows, cols=cols, width=width, height=height)


def tile_bounds(grid: GridSpec, tile: TileId) -> tuple[int, int, int, int]:
    """Half-open pixel rectangle (u0, u1, v0, v1) of a tile.

    Row 1 is the bottom band of the image, i.e. the largest v values.
    """
    if not (0 <= tile.col < grid.cols and 1 <= tile.row <= grid.rows):
        raise TileOutOfRange(f"tile {tile.name!r} outside a {grid.rows}x{grid.cols} grid")
    u_edges = grid.u_edges
    v_edges = grid.v_edges
    u0, u1 = u_edges[tile.col], u_edges[tile.col + 1]
    band = grid.rows - tile.row  # row 1 -> last v band
    v0, v1 = v_edges[band], v_edges[band + 1]
    return u0, u1, v0, v1


_TILE_RE = re.compile(r"^([a-z])([0-9]+)$")


def parse_tile_name(grid: GridSpec, name: str) -> TileId:
    """Parse names like "c2" (case-insensitive). Raises MalformedTile / TileOutOfRange."""
    if not isinstance(name, str):
        raise MalformedTile(f"tile name must be a string, got {type(name).__name__}")
    match = _TILE_RE.match(name.strip().lower())
    if not match:
        raise MalformedTile(f"tile name {name!r} is not a column letter followed by a row number")
    col = string.ascii_lowercase.index(match.group(1))
    row = int(match.group(2))
    if col >= grid.cols or not (1 <= row <= grid.rows):
        raise TileOutOfRange(
            f"tile {name!r} outside a {grid.rows}x{grid.cols} grid "
            f"(columns a-{string.ascii_lowercase[grid.cols - 1]}, rows 1-{grid.rows})"
        )
    return TileId(col, row)


def sample_point_in_tile(grid: GridSpec, tile: TileId, seed: int) -> Pixel:
    """Uniform integer pixel inside a tile; the same seed always gives the same pixel."""
    u0, u1, v0, v1 = tile_bounds(grid, tile)
    rng = np.random.default_rng(seed)
    u = int(rng.integers(u0, u1))
    v = int(rng.integers(v0, v1))
    return Pixel(u, v)


def tile_of_pixel(grid: GridSpec, pixel: Pixel) -> TileId:
    """The tile containing an integer pixel (inverse of tile_bounds membership)."""
    u, v = int(pixel.u), int(pixel.v)
    if not (0 <= u < grid.width and 0 <= v < grid.height):
        raise TileOutOfRange(f"pixel ({u}, {v}) outside the {grid.width}x{grid.height} image")
    col = int(np.searchsorted(grid.u_edges, u, side="right")) - 1
    band = int(np.searchsorted(grid.v_edges, v, side="right")) - 1
    col = min(col, grid.cols - 1)
    band = min(band, grid.rows - 1)
    return TileId(col, grid.rows - band)
