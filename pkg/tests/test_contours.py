"""Contour tracing, centroid, and farthest-point sampling against independent oracles.

The brute-force oracles here are deliberately naive re-implementations (flood
fill, O(n*k) greedy scans) so the production code is checked against a second
route, not against itself.
"""

import numpy as np
import pytest

from markmotion.errors import DegenerateContour, EmptyMask
from markmotion.geometry import (
    BinaryMask,
    Contour,
    Pixel,
    extract_contour,
    farthest_point_sampling,
    largest_component,
    mask_centroid,
)


def mask_from_rows(rows):
    return BinaryMask(np.array([[c == "#" for c in row] for row in rows]))


def flood_fill_components(bits):
    """Oracle: 8-connected components via an explicit stack-based flood fill."""
    h, w = bits.shape
    seen = np.zeros_like(bits, dtype=bool)
    components = []
    for v in range(h):
        for u in range(w):
            if bits[v, u] and not seen[v, u]:
                stack = [(u, v)]
                seen[v, u] = True
                pixels = []
                while stack:
                    cu, cv = stack.pop()
                    pixels.append((cu, cv))
                    for du in (-1, 0, 1):
                        for dv in (-1, 0, 1):
                            nu, nv = cu + du, cv + dv
                            if 0 <= nu < w and 0 <= nv < h and bits[nv, nu] and not seen[nv, nu]:
                                seen[nv, nu] = True
                                stack.append((nu, nv))
                components.append(pixels)
    return components


class TestExtractContour:
    def test_full_square_order(self):
        # 3x3 all-foreground: 8 border pixels, counter-clockwise as displayed,
        # starting at the topmost-then-leftmost pixel and heading down.
        mask = mask_from_rows(["###", "###", "###"])
        contour = extract_contour(mask)
        expected = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]
        assert [tuple(p) for p in contour.points] == expected

    def test_single_pixel(self):
        mask = mask_from_rows(["....", ".#..", "...."])
        contour = extract_contour(mask)
        assert [tuple(p) for p in contour.points] == [(1, 1)]

    def test_largest_of_two_blobs(self):
        # A 50-pixel blob (10x5) and a 10-pixel blob (5x2), disjoint.
        bits = np.zeros((20, 30), dtype=bool)
        bits[2:7, 3:13] = True
        bits[12:14, 20:25] = True
        mask = BinaryMask(bits)

        oracle = max(flood_fill_components(bits), key=len)
        contour = extract_contour(mask)
        contour_set = {tuple(p) for p in contour.points}
        assert contour_set <= set(oracle)
        # Every boundary pixel of the big blob appears on the trace.
        big = np.zeros_like(bits)
        for u, v in oracle:
            big[v, u] = True
        boundary = set()
        for u, v in oracle:
            for du, dv in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nu, nv = u + du, v + dv
                if not (0 <= nu < 30 and 0 <= nv < 20) or not big[nv, nu]:
                    boundary.add((u, v))
                    break
        assert boundary <= contour_set
        assert contour.pixel(0) == Pixel(3, 2)  # topmost-then-leftmost of the 50px blob

    def test_consecutive_points_are_8_connected_and_closed(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            bits = np.zeros((40, 40), dtype=bool)
            cu, cv = rng.integers(12, 28, size=2)
            ru, rv = rng.integers(4, 10, size=2)
            vv, uu = np.mgrid[0:40, 0:40]
            bits |= ((uu - cu) / ru) ** 2 + ((vv - cv) / rv) ** 2 <= 1.0
            contour = extract_contour(BinaryMask(bits))
            pts = contour.points
            gaps = np.abs(np.diff(np.vstack([pts, pts[:1]]), axis=0))
            assert np.all(gaps.max(axis=1) <= 1)
            assert np.all(bits[pts[:, 1], pts[:, 0]])

    def test_empty_mask_raises(self):
        with pytest.raises(EmptyMask):
            extract_contour(BinaryMask(np.zeros((5, 5), dtype=bool)))


class TestMaskCentroid:
    def test_filled_square_rounds_half_up(self):
        # 10x10 square at origin: mean coordinate 4.5 rounds up to (5, 5).
        bits = np.zeros((12, 12), dtype=bool)
        bits[0:10, 0:10] = True
        assert mask_centroid(BinaryMask(bits)) == Pixel(5, 5)

    def test_l_shape_snaps_to_nearest_foreground(self):
        # L-shape whose arithmetic mean lands outside the mask.
        bits = np.zeros((30, 30), dtype=bool)
        bits[0:4, 0:20] = True   # horizontal bar
        bits[4:20, 0:4] = True   # vertical bar
        mask = BinaryMask(bits)
        centroid = mask_centroid(mask)
        vs, us = np.nonzero(bits)
        mu = np.floor(us.mean() + 0.5)
        mv = np.floor(vs.mean() + 0.5)
        assert not bits[int(mv), int(mu)]  # the rounded mean is off-mask
        d2 = (us - mu) ** 2 + (vs - mv) ** 2
        best = np.argmin(d2)  # oracle: first minimum in raster order
        assert centroid == Pixel(int(us[best]), int(vs[best]))
        assert bits[centroid.v, centroid.u]


def fps_oracle(points, k, centroid):
    """Brute-force greedy max-min selection with lowest-index tie-breaks."""
    pts = [tuple(p) for p in points]
    d2c = [(p[0] - centroid[0]) ** 2 + (p[1] - centroid[1]) ** 2 for p in pts]
    seed = max(range(len(pts)), key=lambda i: (d2c[i], -i))
    chosen = [seed]
    while len(chosen) < k:
        best_i, best_d = None, -1
        for i, p in enumerate(pts):
            d = min((p[0] - pts[j][0]) ** 2 + (p[1] - pts[j][1]) ** 2 for j in chosen)
            if d > best_d:
                best_i, best_d = i, d
        chosen.append(best_i)
    return [pts[i] for i in chosen]


class TestFarthestPointSampling:
    def test_square_corners(self):
        # Dense axis-aligned square contour: k=4 must return the 4 corners.
        side = 20
        pts = (
            [(u, 0) for u in range(side)]
            + [(side - 1, v) for v in range(1, side)]
            + [(u, side - 1) for u in range(side - 2, -1, -1)]
            + [(0, v) for v in range(side - 2, 0, -1)]
        )
        contour = Contour(np.array(pts))
        picks = farthest_point_sampling(contour, 4, centroid=Pixel(9, 9))
        corners = {(0, 0), (side - 1, 0), (side - 1, side - 1), (0, side - 1)}
        assert {tuple(p) for p in picks} == corners

    def test_circle_diametral_pair(self):
        angles = np.linspace(0, 2 * np.pi, 360, endpoint=False)
        pts = np.stack(
            [np.round(100 + 50 * np.cos(angles)), np.round(100 + 50 * np.sin(angles))], axis=1
        ).astype(int)
        pts = pts[np.sort(np.unique(pts, axis=0, return_index=True)[1])]
        contour = Contour(pts)
        a, b = farthest_point_sampling(contour, 2, centroid=Pixel(100, 100))
        gap = np.hypot(a.u - b.u, a.v - b.v)
        assert gap >= 2 * 50 - 2  # diametrically opposite within rasterization slack

    def test_matches_bruteforce_oracle_on_random_blobs(self):
        rng = np.random.default_rng(123)
        for _ in range(25):
            bits = np.zeros((48, 48), dtype=bool)
            for _ in range(3):
                cu, cv = rng.integers(10, 38, size=2)
                ru, rv = rng.integers(3, 9, size=2)
                vv, uu = np.mgrid[0:48, 0:48]
                bits |= ((uu - cu) / ru) ** 2 + ((vv - cv) / rv) ** 2 <= 1.0
            mask = BinaryMask(bits)
            contour = extract_contour(mask)
            k = int(rng.integers(1, min(16, len(contour)) + 1))
            centroid = mask_centroid(mask)
            got = [tuple(p) for p in farthest_point_sampling(contour, k, centroid)]
            want = fps_oracle(contour.points, k, (centroid.u, centroid.v))
            assert got == want

    def test_min_pairwise_distance_beats_random_subsets(self):
        # Spread property: the max-min objective should beat random picks on average.
        rng = np.random.default_rng(5)
        margin = []
        for _ in range(100):
            bits = np.zeros((40, 40), dtype=bool)
            cu, cv = rng.integers(14, 26, size=2)
            ru, rv = rng.integers(6, 12, size=2)
            vv, uu = np.mgrid[0:40, 0:40]
            bits |= ((uu - cu) / ru) ** 2 + ((vv - cv) / rv) ** 2 <= 1.0
            contour = extract_contour(BinaryMask(bits))
            if len(contour) < 6:
                continue
            picks = farthest_point_sampling(contour, 6, mask_centroid(BinaryMask(bits)))
            arr = np.array(picks, dtype=float)

            def min_pairwise(a):
                d = np.linalg.norm(a[:, None, :] - a[None, :, :], axis=2)
                return d[np.triu_indices(len(a), 1)].min()

            rand_idx = rng.choice(len(contour), size=6, replace=False)
            margin.append(
                min_pairwise(arr) - min_pairwise(contour.points[rand_idx].astype(float))
            )
        assert np.mean(margin) > 0

    def test_k_larger_than_contour_raises(self):
        contour = Contour(np.array([(0, 0), (1, 0), (1, 1)]))
        with pytest.raises(DegenerateContour):
            farthest_point_sampling(contour, 4)


def test_largest_component_tie_prefers_raster_order():
    bits = np.zeros((10, 10), dtype=bool)
    bits[1, 1:4] = True  # 3 pixels, appears first in raster order
    bits[5, 5:8] = True  # 3 pixels
    picked = largest_component(BinaryMask(bits))
    assert picked.bits[1, 1] and not picked.bits[5, 5]
