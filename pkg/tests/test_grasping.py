"""Antipodal grasp sampling and nearest-proposal selection."""

import math

import numpy as np
import pytest

from markmotion.errors import NoGraspFound, EmptyProposalSet
from markmotion.geometry import (
    BinaryMask,
    CameraModel,
    DepthImage,
    GraspProposal,
    Point3,
    nearest_grasp,
    project,
    sample_antipodal_grasps,
)


def topdown_cam(height=1.0):
    rotation = np.array([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]])
    return CameraModel(
        fx=500.0, fy=500.0, cx=320.0, cy=240.0, rotation=rotation,
        translation=np.array([0.0, 0.0, height]),
    )


def disk_scene(radius_m=0.025, object_height=0.02, cam=None):
    """A disk on the table plane seen from straight above, with exact depth."""
    cam = cam or topdown_cam()
    vv, uu = np.mgrid[0:480, 0:640]
    center_px = project(Point3(0.0, 0.0, object_height), cam, world=True)
    radius_px = cam.fx * radius_m / (cam.translation[2] - object_height)
    mask = (uu - center_px.u) ** 2 + (vv - center_px.v) ** 2 <= radius_px**2
    depth = np.full((480, 640), cam.translation[2])  # table at z=0
    depth[mask] = cam.translation[2] - object_height
    return DepthImage(depth), BinaryMask(mask), cam, center_px


class TestSampleAntipodalGrasps:
    def test_exactly_thirty_proposals_with_constraints(self):
        depth, mask, cam, _ = disk_scene()
        proposals = sample_antipodal_grasps(depth, mask, cam, n=30, seed=3)
        assert len(proposals) == 30
        cone = math.cos(math.radians(15.0))
        for p in proposals:
            assert p.quality >= cone  # anti-parallel within the friction cone
            assert p.width <= 0.085

    def test_disk_contact_lines_pass_near_center(self):
        depth, mask, cam, center_px = disk_scene()
        proposals = sample_antipodal_grasps(depth, mask, cam, n=30, seed=0)
        for p in proposals:
            a = np.array(project(p.contacts[0], cam, world=True))
            b = np.array(project(p.contacts[1], cam, world=True))
            c = np.array([center_px.u, center_px.v])
            direction = (b - a) / np.linalg.norm(b - a)
            offset = (c - a) - np.dot(c - a, direction) * direction
            assert np.linalg.norm(offset) <= 2.0  # pixels

    def test_oversized_object_raises(self):
        # Disk of diameter 0.2 m: every antipodal chord exceeds the aperture.
        depth, mask, cam, _ = disk_scene(radius_m=0.1)
        with pytest.raises(NoGraspFound):
            sample_antipodal_grasps(depth, mask, cam, n=30, seed=0)

    def test_deterministic_given_seed(self):
        depth, mask, cam, _ = disk_scene()
        a = sample_antipodal_grasps(depth, mask, cam, n=30, seed=11)
        b = sample_antipodal_grasps(depth, mask, cam, n=30, seed=11)
        assert a == b

    def test_padding_with_jitter_when_pairs_scarce(self):
        # A tiny disk yields few distinct boundary pairs; the list must still
        # hold exactly n entries, each obeying the constraints.
        depth, mask, cam, _ = disk_scene(radius_m=0.006)
        proposals = sample_antipodal_grasps(depth, mask, cam, n=30, seed=7)
        assert len(proposals) == 30
        for p in proposals:
            mid = 0.5 * (np.asarray(p.contacts[0]) + np.asarray(p.contacts[1]))
            np.testing.assert_allclose(mid, p.center, atol=1e-6)
            assert p.width <= 0.085

    def test_sorted_by_quality_descending_before_padding(self):
        depth, mask, cam, _ = disk_scene()
        proposals = sample_antipodal_grasps(depth, mask, cam, n=10, seed=0)
        qualities = [p.quality for p in proposals]
        assert qualities == sorted(qualities, reverse=True)


class TestNearestGrasp:
    def make(self, center, quality=1.0):
        c = Point3(*center)
        offset = np.array([0.01, 0.0, 0.0])
        a = Point3(*(np.asarray(c) - offset))
        b = Point3(*(np.asarray(c) + offset))
        return GraspProposal(c, 0.0, 0.02, (a, b), quality)

    def test_matches_linear_scan_on_random_points(self):
        rng = np.random.default_rng(99)
        proposals = [self.make(rng.uniform(-0.5, 0.5, 3)) for _ in range(30)]
        for _ in range(100):
            target = Point3(*rng.uniform(-0.5, 0.5, 3))
            # Oracle: direct linear scan.
            dists = [np.linalg.norm(np.asarray(p.center) - np.asarray(target)) for p in proposals]
            want = proposals[int(np.argmin(dists))]
            assert nearest_grasp(proposals, target) == want

    def test_tie_prefers_higher_quality_then_lower_index(self):
        a = self.make((0.1, 0.0, 0.0), quality=0.97)
        b = self.make((-0.1, 0.0, 0.0), quality=0.99)
        c = self.make((0.1, 0.0, 0.0), quality=0.97)
        target = Point3(0.0, 0.0, 0.0)
        assert nearest_grasp([a, b, c], target) is b
        assert nearest_grasp([a, c], target) is a

    def test_empty_list_raises(self):
        with pytest.raises(EmptyProposalSet):
            nearest_grasp([], Point3(0, 0, 0))
