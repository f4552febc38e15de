"""Core geometric value types: pixels, 3D points, cameras, images, contours, grasps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..errors import DimensionMismatch

DEPTH_SENTINEL = 0.0
DEFAULT_FAR_PLANE_M = 5.0


class Pixel(NamedTuple):
    """Image location as (column, row). Integer for raster data, float for projections."""

    u: float
    v: float


class Point3(NamedTuple):
    """3D point in meters. The owning function documents the frame (camera or world)."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class CameraModel:
    """Pinhole intrinsics plus a rigid camera-to-world transform.

    rotation/translation map camera-frame coordinates to world coordinates:
    p_world = rotation @ p_camera + translation.
    """

    fx: float
    fy: float
    cx: float
    cy: float
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError(f"focal lengths must be positive, got fx={self.fx} fy={self.fy}")
        rot = np.asarray(self.rotation, dtype=float)
        trans = np.asarray(self.translation, dtype=float)
        if rot.shape != (3, 3):
            raise ValueError(f"rotation must be 3x3, got {rot.shape}")
        if trans.shape != (3,):
            raise ValueError(f"translation must have 3 entries, got {trans.shape}")
        if not np.allclose(rot.T @ rot, np.eye(3), atol=1e-9):
            raise ValueError("rotation is not orthonormal within 1e-9")
        if abs(np.linalg.det(rot) - 1.0) > 1e-9:
            raise ValueError("rotation determinant must be +1 within 1e-9")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", trans)

    def to_json_dict(self) -> dict:
        extrinsic = np.eye(4)
        extrinsic[:3, :3] = self.rotation
        extrinsic[:3, 3] = self.translation
        return {
            "fx": self.fx,
            "fy": self.fy,
            "cx": self.cx,
            "cy": self.cy,
            "extrinsic": [float(x) for x in extrinsic.reshape(-1)],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "CameraModel":
        extrinsic = np.asarray(payload["extrinsic"], dtype=float).reshape(4, 4)
        return cls(
            fx=float(payload["fx"]),
            fy=float(payload["fy"]),
            cx=float(payload["cx"]),
            cy=float(payload["cy"]),
            rotation=extrinsic[:3, :3],
            translation=extrinsic[:3, 3],
        )


@dataclass(frozen=True)
class DepthImage:
    """Per-pixel depth in meters; 0.0 marks invalid readings."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise ValueError(f"depth data must be 2D, got shape {data.shape}")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def validate(self, far_plane: float = DEFAULT_FAR_PLANE_M) -> None:
        """Check that every non-sentinel depth lies in (0, far_plane)."""
        valid = self.data != DEPTH_SENTINEL
        if np.any(self.data[valid] <= 0) or np.any(self.data[valid] >= far_plane):
            raise ValueError(f"depth values must lie in (0, {far_plane}) or be the 0.0 sentinel")


@dataclass(frozen=True)
class BinaryMask:
    """Boolean foreground raster with the same indexing as the image it came from."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2:
            raise ValueError(f"mask must be 2D, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits.astype(bool))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    def count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True)
class Contour:
    """Closed boundary as an ordered (n, 2) array of integer (u, v) pixels.

    Consecutive points are 8-connected and the last point neighbours the first.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=int)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"contour points must be (n, 2), got {pts.shape}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    def pixel(self, index: int) -> Pixel:
        u, v = self.points[index]
        return Pixel(int(u), int(v))


@dataclass(frozen=True)
class GraspProposal:
    """A parallel-jaw pinch: 3D center, yaw of the contact line, jaw width, contacts.

    quality is the cosine of how anti-parallel the two contact normals are
    (1.0 = perfectly opposed).
    """

    center: Point3
    yaw: float
    width: float
    contacts: tuple[Point3, Point3]
    quality: float

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("grasp width must be non-negative")
        if not (0.0 <= self.quality <= 1.0):
            raise ValueError(f"quality must lie in [0, 1], got {self.quality}")
        a, b = self.contacts
        mid = 0.5 * (np.asarray(a, dtype=float) + np.asarray(b, dtype=float))
        if np.max(np.abs(mid - np.asarray(self.center, dtype=float))) > 1e-6:
            raise ValueError("grasp center must be the midpoint of the contacts within 1e-6")


def require_same_shape(*images) -> None:
    """Raise DimensionMismatch unless all image-like inputs share (height, width)."""
    shapes = set()
    for img in images:
        if isinstance(img, (BinaryMask, DepthImage)):
            shapes.add((img.height, img.width))
        else:
            arr = np.asarray(img)
            shapes.add(arr.shape[:2])
    if len(shapes) > 1:
        raise DimensionMismatch(f"image shapes differ: {sorted(shapes)}")
