"""Geometric primitives: contours, sampling, cameras, and grasp proposals."""

from .camera import depth_at, deproject, pixel_ray_at_height, project
from .contours import extract_contour, farthest_point_sampling, largest_component, mask_centroid
from .grasping import (
    DEFAULT_FRICTION_HALF_ANGLE_DEG,
    DEFAULT_MAX_APERTURE_M,
    DEFAULT_PROPOSAL_COUNT,
    nearest_grasp,
    sample_antipodal_grasps,
)
from .io import (
    read_camera_json,
    read_depth_pgm,
    read_mask_png,
    read_rgb_png,
    write_camera_json,
    write_depth_pgm,
    write_mask_png,
    write_rgb_png,
)
from .types import (
    DEFAULT_FAR_PLANE_M,
    DEPTH_SENTINEL,
    BinaryMask,
    CameraModel,
    Contour,
    DepthImage,
    GraspProposal,
    Pixel,
    Point3,
    require_same_shape,
)

__all__ = [
    "BinaryMask",
    "CameraModel",
    "Contour",
    "DEFAULT_FAR_PLANE_M",
    "DEFAULT_FRICTION_HALF_ANGLE_DEG",
    "DEFAULT_MAX_APERTURE_M",
    "DEFAULT_PROPOSAL_COUNT",
    "DEPTH_SENTINEL",
    "DepthImage",
    "GraspProposal",
    "Pixel",
    "Point3",
    "depth_at",
    "deproject",
    "extract_contour",
    "farthest_point_sampling",
    "largest_component",
    "mask_centroid",
    "nearest_grasp",
    "pixel_ray_at_height",
    "project",
    "read_camera_json",
    "read_depth_pgm",
    "read_mask_png",
    "read_rgb_png",
    "require_same_shape",
    "sample_antipodal_grasps",
    "write_camera_json",
    "write_depth_pgm",
    "write_mask_png",
    "write_rgb_png",
]
