"""Deterministic 2.5-D tabletop simulator: scenes, rendering, stepping, goals."""

from .engine import (
    ATTACH_CENTER_TOL_M,
    ATTACH_HEIGHT_TOL_M,
    GRIPPER_NAME,
    StepInfo,
    TabletopSim,
)
from .predicates import (
    GoalReport,
    evaluate_all_goals,
    evaluate_group,
    evaluate_predicate,
)
from .render import GRIPPER_COLOR, TABLE_COLOR, RenderResult, render_scene
from .scenes import (
    IMAGE_HEIGHT,
    IMAGE_WIDTH,
    SCENE_BUILDERS,
    TABLE_BOUNDS,
    build_gift_prep,
    build_laptop_packing,
    build_scene,
    build_sweep_fixture,
    build_table_wiping,
    build_watch_cleaning,
    fixture_camera,
    load_packaged_scene,
    tile_center,
)
from .shapes import (
    convex_overlap,
    line_chord,
    polygon_centroid,
    rectangle,
    regular_polygon,
    square_polygon,
    transform_polygon,
    vertical_overlap,
)
from .types import (
    ARTICULATION_BUTTON,
    ARTICULATION_KINDS,
    ARTICULATION_SLIDE,
    MASS_CLASSES,
    MASS_HEAVY,
    MASS_LIGHT,
    PREDICATE_KINDS,
    ArticulationSpec,
    GripperSpec,
    ObjectSpec,
    Predicate,
    Region,
    SceneSpec,
)

__all__ = [
    "ATTACH_CENTER_TOL_M",
    "ATTACH_HEIGHT_TOL_M",
    "ARTICULATION_BUTTON",
    "ARTICULATION_KINDS",
    "ARTICULATION_SLIDE",
    "GRIPPER_COLOR",
    "GRIPPER_NAME",
    "GoalReport",
    "GripperSpec",
    "IMAGE_HEIGHT",
    "IMAGE_WIDTH",
    "MASS_CLASSES",
    "MASS_HEAVY",
    "MASS_LIGHT",
    "ObjectSpec",
    "ArticulationSpec",
    "PREDICATE_KINDS",
    "Predicate",
    "Region",
    "RenderResult",
    "SCENE_BUILDERS",
    "SceneSpec",
    "StepInfo",
    "TABLE_BOUNDS",
    "TABLE_COLOR",
    "TabletopSim",
    "build_gift_prep",
    "build_laptop_packing",
    "build_scene",
    "build_sweep_fixture",
    "build_table_wiping",
    "build_watch_cleaning",
    "convex_overlap",
    "evaluate_all_goals",
    "evaluate_group",
    "evaluate_predicate",
    "fixture_camera",
    "line_chord",
    "load_packaged_scene",
    "polygon_centroid",
    "rectangle",
    "regular_polygon",
    "render_scene",
    "square_polygon",
    "tile_center",
    "transform_polygon",
    "vertical_overlap",
]
