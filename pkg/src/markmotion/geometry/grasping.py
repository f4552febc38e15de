"""Antipodal parallel-jaw grasp sampling from a top-down depth image and object mask."""

from __future__ import annotations

import math

import numpy as np

from ..errors import EmptyMask, EmptyProposalSet, NoGraspFound
from .camera import depth_at, deproject
from .types import BinaryMask, CameraModel, DepthImage, GraspProposal, Pixel, Point3, DEPTH_SENTINEL

DEFAULT_PROPOSAL_COUNT = 30
DEFAULT_FRICTION_HALF_ANGLE_DEG = 15.0
DEFAULT_MAX_APERTURE_M = 0.085

# Boundary pixels are thinned to at most this many before pairing, keeping the
# pair enumeration quadratic in a small constant.
_MAX_BOUNDARY_POINTS = 360


def _boundary_pixels(mask: np.ndarray) -> np.ndarray:
    """Foreground pixels with at least one 4-neighbor outside the mask, as (n, 2) (u, v)."""
    padded = np.pad(mask, 1, constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    edge = mask & ~interior
    vs, us = np.nonzero(edge)
    return np.stack([us, vs], axis=1)


def _smoothed_gradient(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gradient of a binomially smoothed mask; points from background toward foreground."""
    kernel = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
    smooth = mask.astype(float)
    for _ in range(2):
        smooth = np.apply_along_axis(lambda r: np.convolve(r, kernel, mode="same"), 0, smooth)
        smooth = np.apply_along_axis(lambda r: np.convolve(r, kernel, mode="same"), 1, smooth)
    gv, gu = np.gradient(smooth)
    return gu, gv


def sample_antipodal_grasps(
    depth: DepthImage,
    mask: BinaryMask,
    cam: CameraModel,
    n: int = DEFAULT_PROPOSAL_COUNT,
    seed: int = 0,
    friction_half_angle_deg: float = DEFAULT_FRICTION_HALF_ANGLE_DEG,
    max_aperture: float = DEFAULT_MAX_APERTURE_M,
) -> list[GraspProposal]:
    """Propose exactly ``n`` top-down pinch grasps on the masked object.

    Contact pairs are drawn from boundary pixels whose outward normals (from
    the smoothed mask gradient) oppose each other within the friction-cone
    half-angle, whose connecting line stays inside both friction cones, and
    whose lifted 3D separation fits the gripper aperture. Up to ``n`` pairs
    are drawn in a seeded random order so proposals spread over the whole
    boundary; the returned list is sorted by how anti-parallel the normals
    are. If fewer than ``n`` distinct pairs exist, the list is padded with
    seeded small translations of the drawn pairs. Raises NoGraspFound when no
    pair qualifies.
    """
    if mask.count() == 0:
        raise EmptyMask("cannot sample grasps on an empty mask")
    boundary = _boundary_pixels(mask.bits)
    if boundary.shape[0] > _MAX_BOUNDARY_POINTS:
        stride = int(math.ceil(boundary.shape[0] / _MAX_BOUNDARY_POINTS))
        boundary = boundary[::stride]

    gu, gv = _smoothed_gradient(mask.bits)
    g = np.stack([gu[boundary[:, 1], boundary[:, 0]], gv[boundary[:, 1], boundary[:, 0]]], axis=1)
    norms = np.linalg.norm(g, axis=1)
    usable = norms > 1e-9
    boundary = boundary[usable]
    normals = -g[usable] / norms[usable, None]  # outward: gradient points inward

    m = boundary.shape[0]
    if m < 2:
        raise NoGraspFound("object boundary too small to form contact pairs")

    cos_cone = math.cos(math.radians(friction_half_angle_deg))

    # Pairwise anti-parallelism of normals.
    quality = -(normals @ normals.T)
    # Contact-line direction for every pair, in image coordinates.
    diff = boundary[None, :, :] - boundary[:, None, :]
    dist = np.linalg.norm(diff.astype(float), axis=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        direction = diff / np.where(dist[..., None] > 0, dist[..., None], 1.0)
    dot_i = np.einsum("ijk,ik->ij", direction, normals)  # direction . n_i
    dot_j = np.einsum("ijk,jk->ij", direction, normals)  # direction . n_j

    valid = (
        (quality >= cos_cone)
        & (dot_i <= -cos_cone)
        & (dot_j >= cos_cone)
        & (dist > 0)
    )
    valid &= np.triu(np.ones_like(valid, dtype=bool), k=1)
    ii, jj = np.nonzero(valid)
    if ii.size == 0:
        raise NoGraspFound("no antipodal pair satisfies the friction cone")

    # Lift all involved boundary pixels once.
    lifted: dict[int, Point3] = {}

    def lift(idx: int) -> Point3:
        if idx not in lifted:
            u, v = int(boundary[idx, 0]), int(boundary[idx, 1])
            d = float(depth.data[v, u])
            if d == DEPTH_SENTINEL:
                d = depth_at(depth, Pixel(u, v))
            lifted[idx] = deproject(Pixel(u, v), d, cam, world=True)
        return lifted[idx]

    rng = np.random.default_rng(seed)
    # Visit candidate pairs in a seeded random order so the kept proposals
    # spread over the whole boundary instead of clustering where the
    # anti-parallelism score peaks.
    picked: list[tuple[float, int, int, GraspProposal]] = []
    for k in rng.permutation(ii.size):
        a, b = int(ii[k]), int(jj[k])
        pa, pb = lift(a), lift(b)
        width = float(np.linalg.norm(np.subtract(pb, pa)))
        if width > max_aperture:
            continue
        center = Point3(*(0.5 * (np.asarray(pa) + np.asarray(pb))))
        yaw = math.atan2(pb.y - pa.y, pb.x - pa.x)
        q = float(min(1.0, max(0.0, quality[a, b])))
        picked.append((q, a, b, GraspProposal(center, yaw, width, (pa, pb), q)))
        if len(picked) >= n:
            break

    if not picked:
        raise NoGraspFound(f"no antipodal pair fits the {max_aperture} m aperture")

    picked.sort(key=lambda t: (-t[0], t[1], t[2]))
    proposals = [t[3] for t in picked]
    base = len(proposals)
    while len(proposals) < n:
        parent = proposals[len(proposals) % base]
        delta = rng.normal(0.0, 0.001, size=3)
        pa = Point3(*(np.asarray(parent.contacts[0]) + delta))
        pb = Point3(*(np.asarray(parent.contacts[1]) + delta))
        center = Point3(*(np.asarray(parent.center) + delta))
        proposals.append(
            GraspProposal(center, parent.yaw, parent.width, (pa, pb), parent.quality)
        )
    return proposals


def nearest_grasp(proposals: list[GraspProposal], predicted: Point3) -> GraspProposal:
    """The proposal whose center is closest to a predicted grasp point.

    Ties break toward higher quality, then toward the earlier list position.
    """
    if not proposals:
        raise EmptyProposalSet("no grasp proposals to choose from")
    target = np.asarray(predicted, dtype=float)
    dists = np.array([np.linalg.norm(np.asarray(p.center) - target) for p in proposals])
    qualities = np.array([p.quality for p in proposals])
    order = np.lexsort((np.arange(len(proposals)), -qualities, dists))
    return proposals[int(order[0])]
