"""Pinhole model: hand-computed cases, round-trip identities, and depth fallback."""

import numpy as np
import pytest

from markmotion.errors import BehindCamera, InvalidDepth
from markmotion.geometry import (
    CameraModel,
    DepthImage,
    Pixel,
    Point3,
    depth_at,
    deproject,
    pixel_ray_at_height,
    project,
)


def simple_cam(**kwargs):
    defaults = dict(fx=500.0, fy=500.0, cx=320.0, cy=240.0)
    defaults.update(kwargs)
    return CameraModel(**defaults)


def topdown_cam(height=1.0):
    """Camera looking straight down from (0, 0, height): +u maps to +x, +v to -y."""
    rotation = np.array([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]])
    return CameraModel(
        fx=500.0, fy=500.0, cx=320.0, cy=240.0, rotation=rotation,
        translation=np.array([0.0, 0.0, height]),
    )


class TestDeproject:
    def test_principal_point_lands_on_axis(self):
        cam = simple_cam()
        p = deproject(Pixel(320.0, 240.0), 2.0, cam)
        assert p == Point3(0.0, 0.0, 2.0)

    def test_one_focal_length_off_axis(self):
        # u = cx + fx at depth 1 means x = 1 exactly.
        cam = simple_cam()
        p = deproject(Pixel(320.0 + 500.0, 240.0), 1.0, cam)
        np.testing.assert_allclose(p, (1.0, 0.0, 1.0), atol=1e-12)

    def test_world_frame_uses_extrinsic(self):
        cam = topdown_cam(height=1.0)
        p = deproject(Pixel(320.0, 240.0), 1.0, cam, world=True)
        np.testing.assert_allclose(p, (0.0, 0.0, 0.0), atol=1e-12)

    def test_nonpositive_depth_rejected(self):
        with pytest.raises(InvalidDepth):
            deproject(Pixel(10, 10), 0.0, simple_cam())


class TestProject:
    def test_behind_camera_rejected(self):
        with pytest.raises(BehindCamera):
            project(Point3(0.0, 0.0, -0.1), simple_cam())

    def test_round_trip_identities(self):
        # project(deproject(p, d)) == p and deproject(project(X), X.z) == X
        # within 1e-6 over 10_000 random in-frustum samples.
        rng = np.random.default_rng(42)
        cam = topdown_cam(height=1.5)
        n = 10_000
        us = rng.uniform(0, 640, n)
        vs = rng.uniform(0, 480, n)
        ds = rng.uniform(0.2, 4.5, n)
        for u, v, d in zip(us[:5000], vs[:5000], ds[:5000]):
            point = deproject(Pixel(u, v), d, cam, world=True)
            back = project(point, cam, world=True)
            assert abs(back.u - u) <= 1e-6 and abs(back.v - v) <= 1e-6
        xs = rng.uniform(-1, 1, n)
        ys = rng.uniform(-1, 1, n)
        zs = rng.uniform(0.1, 1.4, n)
        for x, y, z in zip(xs[:5000], ys[:5000], zs[:5000]):
            world = Point3(x, y, z)
            pix = project(world, cam, world=True)
            depth = 1.5 - z  # camera-frame z for the straight-down camera
            again = deproject(pix, depth, cam, world=True)
            np.testing.assert_allclose(again, world, atol=1e-6)


class TestCameraModelValidation:
    def test_rejects_non_orthonormal_rotation(self):
        bad = np.eye(3)
        bad[0, 1] = 1e-5
        with pytest.raises(ValueError):
            simple_cam(rotation=bad)

    def test_rejects_reflection(self):
        with pytest.raises(ValueError):
            simple_cam(rotation=np.diag([1.0, 1.0, -1.0]))

    def test_json_round_trip(self):
        cam = topdown_cam(height=0.9)
        clone = CameraModel.from_json_dict(cam.to_json_dict())
        assert clone.fx == cam.fx and clone.cy == cam.cy
        np.testing.assert_array_equal(clone.rotation, cam.rotation)
        np.testing.assert_array_equal(clone.translation, cam.translation)
        payload = cam.to_json_dict()
        assert len(payload["extrinsic"]) == 16
        # row-major 4x4: translation sits at indices 3, 7, 11
        assert payload["extrinsic"][11] == 0.9


class TestDepthAt:
    def test_valid_pixel_passthrough(self):
        img = DepthImage(np.full((10, 10), 2.5))
        assert depth_at(img, Pixel(3, 3)) == 2.5

    def test_sentinel_uses_median_of_window(self):
        data = np.full((10, 10), 0.0)
        # 5x5 window around (5, 5) with a known set of valid values.
        values = [1.0, 2.0, 3.0, 4.0, 9.0]
        for i, val in enumerate(values):
            data[3 + i, 3] = val
        img = DepthImage(data)
        assert depth_at(img, Pixel(5, 5)) == 3.0  # median of the five

    def test_all_invalid_window_raises(self):
        img = DepthImage(np.zeros((10, 10)))
        with pytest.raises(InvalidDepth):
            depth_at(img, Pixel(5, 5))

    def test_window_clips_at_image_border(self):
        data = np.zeros((6, 6))
        data[0, 1] = 1.25
        img = DepthImage(data)
        assert depth_at(img, Pixel(0, 0)) == 1.25


class TestPixelRayAtHeight:
    def test_matches_deproject_on_known_plane(self):
        cam = topdown_cam(height=1.0)
        # The ray through any pixel hits z=0.25 at camera depth 0.75.
        for u, v in [(320.0, 240.0), (100.5, 400.25), (600.0, 10.0)]:
            via_ray = pixel_ray_at_height(Pixel(u, v), 0.25, cam)
            via_depth = deproject(Pixel(u, v), 0.75, cam, world=True)
            np.testing.assert_allclose(via_ray, via_depth, atol=1e-9)

    def test_plane_behind_camera_rejected(self):
        cam = topdown_cam(height=1.0)
        with pytest.raises(InvalidDepth):
            pixel_ray_at_height(Pixel(320, 240), 2.0, cam)
