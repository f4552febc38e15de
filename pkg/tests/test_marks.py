"""Grid partition, tile parsing, keypoint proposal, and rendering tests."""

import numpy as np
import pytest

from markmotion.errors import (
    DimensionMismatch,
    MalformedTile,
    TileOutOfRange,
    UnknownLabel,
)
from markmotion.geometry import BinaryMask, Pixel
from markmotion.marks import (
    GridSpec,
    KeypointCandidate,
    MarkSet,
    TileId,
    build_grid,
    parse_tile_name,
    propose_keypoints,
    render_marks,
    resolve_selection,
    sample_point_in_tile,
    tile_bounds,
    tile_of_pixel,
)
from markmotion.marks.keypoints import ROLE_GRASPED, ROLE_UNATTACHED, SOURCE_BOUNDARY, SOURCE_CENTER


# ---------------------------------------------------------------------------
# Grid partition
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("width,height", [(500, 500), (501, 333), (640, 480)])
def test_grid_partitions_every_pixel_exactly_once(width, height):
    grid = build_grid(width, height)
    cover = np.zeros((height, width), dtype=np.int32)
    for tile in grid.all_tiles():
        u0, u1, v0, v1 = tile_bounds(grid, tile)
        assert u0 < u1 and v0 < v1
        cover[v0:v1, u0:u1] += 1
    assert cover.min() == 1 and cover.max() == 1


def test_tile_bounds_a1_is_bottom_left_band():
    grid = build_grid(500, 500)
    assert tile_bounds(grid, parse_tile_name(grid, "a1")) == (0, 100, 400, 500)
    # Top-right tile picks up any remainder band.
    assert tile_bounds(grid, parse_tile_name(grid, "e5")) == (400, 500, 0, 100)


def test_remainder_pixels_go_to_the_outer_bands():
    grid = build_grid(501, 502)
    u0, u1, v0, v1 = tile_bounds(grid, parse_tile_name(grid, "e1"))
    assert u1 == 501 and u1 - u0 == 101  # extra column joins the right band
    assert v1 == 502 and v1 - v0 == 102  # extra rows join the bottom band


def test_tile_of_pixel_inverts_bounds():
    grid = build_grid(501, 333)
    rng = np.random.default_rng(7)
    for _ in range(500):
        u = int(rng.integers(0, 501))
        v = int(rng.integers(0, 333))
        tile = tile_of_pixel(grid, Pixel(u, v))
        u0, u1, v0, v1 = tile_bounds(grid, tile)
        assert u0 <= u < u1 and v0 <= v < v1


# ---------------------------------------------------------------------------
# Tile-name parsing
# ---------------------------------------------------------------------------


def test_parse_tile_name_accepts_case_and_whitespace():
    grid = build_grid(500, 500)
    assert parse_tile_name(grid, "C2") == TileId(2, 2)
    assert parse_tile_name(grid, "  b4 ") == TileId(1, 4)


@pytest.mark.parametrize("bad", ["4c", "", "cc", "c", "2", "c0x"])
def test_parse_tile_name_rejects_malformed(bad):
    grid = build_grid(500, 500)
    with pytest.raises(MalformedTile):
        parse_tile_name(grid, bad)


@pytest.mark.parametrize("oob", ["f1", "a0", "a6"])
def test_parse_tile_name_rejects_out_of_range(oob):
    grid = build_grid(500, 500)
    with pytest.raises(TileOutOfRange):
        parse_tile_name(grid, oob)


def test_sample_point_in_tile_is_deterministic_and_in_bounds():
    grid = build_grid(501, 333)
    tile = parse_tile_name(grid, "d2")
    u0, u1, v0, v1 = tile_bounds(grid, tile)
    first = sample_point_in_tile(grid, tile, seed=42)
    again = sample_point_in_tile(grid, tile, seed=42)
    assert first == again
    assert u0 <= first.u < u1 and v0 <= first.v < v1


def test_sample_point_in_tile_covers_the_tile_uniformly():
    grid = build_grid(500, 500)
    tile = parse_tile_name(grid, "c3")
    u0, u1, v0, v1 = tile_bounds(grid, tile)
    pts = np.array(
        [sample_point_in_tile(grid, tile, seed=s) for s in range(10_000)], dtype=float
    )
    center = ((u0 + u1 - 1) / 2.0, (v0 + v1 - 1) / 2.0)
    assert abs(pts[:, 0].mean() - center[0]) < 3.0
    assert abs(pts[:, 1].mean() - center[1]) < 3.0
    # Every drawn pixel stays inside the tile.
    assert pts[:, 0].min() >= u0 and pts[:, 0].max() < u1
    assert pts[:, 1].min() >= v0 and pts[:, 1].max() < v1


# ---------------------------------------------------------------------------
# Keypoint proposal
# ---------------------------------------------------------------------------


def _disk_mask(h, w, cu, cv, r):
    vv, uu = np.mgrid[0:h, 0:w]
    return BinaryMask(((uu - cu) ** 2 + (vv - cv) ** 2 <= r * r))


def test_propose_keypoints_labels_and_sources():
    mask = _disk_mask(200, 200, 100, 100, 40)
    cands = propose_keypoints(mask, ROLE_GRASPED)
    assert [c.label for c in cands] == [f"P{i}" for i in range(9)]
    assert [c.source for c in cands] == [SOURCE_BOUNDARY] * 8 + [SOURCE_CENTER]
    bits = mask.bits
    for c in cands:
        assert bits[int(c.pixel.v), int(c.pixel.u)]
    center = cands[-1]
    assert abs(center.pixel.u - 100) <= 1 and abs(center.pixel.v - 100) <= 1


def test_propose_keypoints_start_index_offsets_labels():
    mask = _disk_mask(100, 100, 50, 50, 20)
    cands = propose_keypoints(mask, ROLE_UNATTACHED, start_index=9)
    assert [c.label for c in cands] == [f"Q{i}" for i in range(9, 18)]


def test_markset_round_trips_through_json(tmp_path):
    grid = build_grid(200, 200)
    mask = _disk_mask(200, 200, 80, 110, 30)
    cands = propose_keypoints(mask, ROLE_UNATTACHED)
    ms = MarkSet(candidates=tuple(cands), grid=grid, base_image_id="scene0")
    path = tmp_path / "marks.json"
    ms.save(path)
    back = MarkSet.load(path)
    assert back == ms


def test_markset_rejects_duplicate_labels():
    grid = build_grid(100, 100)
    c = KeypointCandidate("P0", Pixel(5, 5), ROLE_GRASPED, SOURCE_BOUNDARY)
    with pytest.raises(ValueError):
        MarkSet(candidates=(c, c), grid=grid)


def test_resolve_selection_is_case_insensitive():
    grid = build_grid(100, 100)
    c0 = KeypointCandidate("P0", Pixel(5, 5), ROLE_GRASPED, SOURCE_BOUNDARY)
    c1 = KeypointCandidate("Q3", Pixel(50, 60), ROLE_UNATTACHED, SOURCE_BOUNDARY)
    ms = MarkSet(candidates=(c0, c1), grid=grid)
    assert resolve_selection(ms, " q3 ") is c1
    assert resolve_selection(ms, "p0") is c0
    with pytest.raises(UnknownLabel) as err:
        resolve_selection(ms, "P7")
    assert "P0" in str(err.value) and "Q3" in str(err.value)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _render_fixture():
    grid = build_grid(320, 240)
    mask = _disk_mask(240, 320, 90, 120, 35)
    p = propose_keypoints(mask, ROLE_GRASPED)
    mask2 = _disk_mask(240, 320, 230, 100, 30)
    q = propose_keypoints(mask2, ROLE_UNATTACHED)
    ms = MarkSet(candidates=tuple(p + q), grid=grid)
    image = np.full((240, 320, 3), 210, dtype=np.uint8)
    return image, ms


def test_render_marks_is_deterministic_and_pure():
    image, ms = _render_fixture()
    before = image.copy()
    one = render_marks(image, ms)
    two = render_marks(image, ms)
    assert np.array_equal(one.pixels, two.pixels)
    assert np.array_equal(image, before)  # input untouched
    assert not np.array_equal(one.pixels, before)


def test_render_marks_draws_grid_lines_and_colored_dots():
    image, ms = _render_fixture()
    out = render_marks(image, ms).pixels
    grid = ms.grid
    u_inner = grid.u_edges[1]
    assert (out[:, u_inner] == (160, 160, 160)).all(axis=1).any()
    reds = (out == (255, 0, 0)).all(axis=2).sum()
    blues = (out == (0, 0, 255)).all(axis=2).sum()
    # Nine dots of radius 6 per role: comfortably over 400 pixels each,
    # even when some dots and captions overlap.
    assert reds > 400 and blues > 400


def test_render_marks_keeps_corner_captions_in_frame():
    grid = build_grid(320, 240)
    corners = (
        KeypointCandidate("P0", Pixel(1, 1), ROLE_GRASPED, SOURCE_BOUNDARY),
        KeypointCandidate("P1", Pixel(318, 1), ROLE_GRASPED, SOURCE_BOUNDARY),
        KeypointCandidate("Q0", Pixel(1, 238), ROLE_UNATTACHED, SOURCE_BOUNDARY),
        KeypointCandidate("Q1", Pixel(318, 238), ROLE_UNATTACHED, SOURCE_BOUNDARY),
    )
    ms = MarkSet(candidates=corners, grid=grid)
    image = np.zeros((240, 320, 3), dtype=np.uint8)
    out = render_marks(image, ms).pixels  # must not raise; captions clamp inside
    assert out.shape == (240, 320, 3)
    assert (out == (255, 0, 0)).all(axis=2).sum() > 0


def test_render_marks_rejects_size_mismatch():
    _, ms = _render_fixture()
    wrong = np.zeros((100, 100, 3), dtype=np.uint8)
    with pytest.raises(DimensionMismatch):
        render_marks(wrong, ms)
