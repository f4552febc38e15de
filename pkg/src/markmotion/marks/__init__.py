"""Grid overlays, keypoint candidates, and mark rendering."""

from .grid import (
    GridSpec,
    TileId,
    build_grid,
    parse_tile_name,
    sample_point_in_tile,
    tile_bounds,
    tile_of_pixel,
)
from .keypoints import (
    DEFAULT_BOUNDARY_POINTS,
    ROLE_GRASPED,
    ROLE_UNATTACHED,
    SOURCE_BOUNDARY,
    SOURCE_CENTER,
    KeypointCandidate,
    MarkSet,
    propose_keypoints,
    resolve_selection,
)
from .render import (
    AnnotatedImage,
    CAPTION_HEIGHT_PX,
    DOT_RADIUS_PX,
    GRASPED_COLOR,
    UNATTACHED_COLOR,
    render_marks,
)

__all__ = [
    "GridSpec",
    "TileId",
    "build_grid",
    "parse_tile_name",
    "sample_point_in_tile",
    "tile_bounds",
    "tile_of_pixel",
    "DEFAULT_BOUNDARY_POINTS",
    "ROLE_GRASPED",
    "ROLE_UNATTACHED",
    "SOURCE_BOUNDARY",
    "SOURCE_CENTER",
    "KeypointCandidate",
    "MarkSet",
    "propose_keypoints",
    "resolve_selection",
    "AnnotatedImage",
    "CAPTION_HEIGHT_PX",
    "DOT_RADIUS_PX",
    "GRASPED_COLOR",
    "UNATTACHED_COLOR",
    "render_marks",
]
