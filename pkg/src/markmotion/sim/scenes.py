"""Built-in tabletop scenes: four task archetypes plus a unit-test fixture.

All scenes share one overhead camera whose view spans the whole table, so
image tiles correspond to fixed table patches. Layouts are chosen so that
every goal is reachable within the per-stage step budget from any jittered
start. ``seed=None`` builds the canonical layout; an integer seed applies a
bounded random perturbation to object poses (larger for small free-standing
objects, smaller for bulky anchors), after which trigger regions and goal
predicates are derived from the perturbed poses.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigError
from ..geometry import CameraModel
from .shapes import rectangle
from .types import (
    ARTICULATION_BUTTON,
    ARTICULATION_SLIDE,
    MASS_HEAVY,
    MASS_LIGHT,
    ArticulationSpec,
    GripperSpec,
    ObjectSpec,
    Predicate,
    Region,
    SceneSpec,
)

IMAGE_WIDTH = 640
IMAGE_HEIGHT = 480
TABLE_BOUNDS = (-0.64, -0.48, 0.64, 0.48)

# Uniform pose noise half-ranges by object role.
JITTER_FREE_XY_M = 0.015
JITTER_FREE_YAW_RAD = math.radians(10.0)
JITTER_ANCHOR_XY_M = 0.008
JITTER_ANCHOR_YAW_RAD = math.radians(4.0)

# Margins that grow a receptacle's accept region beyond its own center so it
# covers every possible drop point in the deposit tile (waypoint sampling
# anywhere in the tile, plus grasp-center offset, plus pose noise).
DEPOSIT_MARGIN_X_M = 0.155
DEPOSIT_MARGIN_Y_M = 0.12


def fixture_camera() -> CameraModel:
    """Overhead pinhole camera whose frustum covers exactly the table."""
    return CameraModel(
        fx=500.0,
        fy=500.0,
        cx=IMAGE_WIDTH / 2.0,
        cy=IMAGE_HEIGHT / 2.0,
        rotation=((1.0, 0.0, 0.0), (0.0, -1.0, 0.0), (0.0, 0.0, -1.0)),
        translation=(0.0, 0.0, 1.0),
    )


def tile_center(col: int, row: int) -> tuple[float, float]:
    """World (x, y) of the center of grid tile (col 0..4 = a..e, row 1..5)."""
    u = 64.0 + 128.0 * col
    v = 528.0 - 96.0 * row
    return ((u - 320.0) / 500.0, -(v - 240.0) / 500.0)


class _Jitter:
    """Deterministic bounded pose noise, one draw per object in order."""

    def __init__(self, seed: int | None):
        self._rng = np.random.default_rng(seed) if seed is not None else None

    def pose(
        self, x: float, y: float, yaw: float = 0.0, anchor: bool = False
    ) -> tuple[float, float, float]:
        if self._rng is None:
            return (x, y, yaw)
        dxy = JITTER_ANCHOR_XY_M if anchor else JITTER_FREE_XY_M
        dyaw = JITTER_ANCHOR_YAW_RAD if anchor else JITTER_FREE_YAW_RAD
        return (
            x + self._rng.uniform(-dxy, dxy),
            y + self._rng.uniform(-dxy, dxy),
            yaw + self._rng.uniform(-dyaw, dyaw),
        )


def _deposit_region(x: float, y: float) -> Region:
    return Region(
        x - DEPOSIT_MARGIN_X_M,
        y - DEPOSIT_MARGIN_Y_M,
        x + DEPOSIT_MARGIN_X_M,
        y + DEPOSIT_MARGIN_Y_M,
    )


def _scene_name(family: str, seed: int | None) -> str:
    return family if seed is None else f"{family}_j{seed}"


# ---------------------------------------------------------------------------
# Archetype: place one object, then sweep another with a tool
# ---------------------------------------------------------------------------


def build_table_wiping(seed: int | None = None) -> SceneSpec:
    jitter = _Jitter(seed)
    broom_x, broom_y, broom_yaw = jitter.pose(*tile_center(0, 2))
    trash_x, trash_y, trash_yaw = jitter.pose(*tile_center(2, 4))
    glasses_x, glasses_y, glasses_yaw = jitter.pose(*tile_center(1, 2))
    case_x, case_y, case_yaw = jitter.pose(*tile_center(3, 2), anchor=True)

    objects = (
        ObjectSpec(
            name="broom",
            footprint=rectangle(0.04, 0.25),
            height=0.04,
            x=broom_x,
            y=broom_y,
            yaw=broom_yaw,
            color=(150, 102, 51),
        ),
        ObjectSpec(
            name="trash",
            footprint=rectangle(0.05, 0.05),
            height=0.025,
            x=trash_x,
            y=trash_y,
            yaw=trash_yaw,
            color=(92, 138, 79),
        ),
        ObjectSpec(
            name="eyeglasses",
            footprint=rectangle(0.11, 0.035),
            height=0.018,
            x=glasses_x,
            y=glasses_y,
            yaw=glasses_yaw,
            color=(42, 42, 48),
        ),
        ObjectSpec(
            name="case",
            footprint=rectangle(0.256, 0.192),
            height=0.01,
            x=case_x,
            y=case_y,
            yaw=case_yaw,
            color=(161, 82, 82),
            mass_class=MASS_HEAVY,
        ),
    )
    right_strip = Region(0.30, 0.02, 0.635, 0.47)
    return SceneSpec(
        name=_scene_name("table_wiping", seed),
        instruction=(
            "Put the eyeglasses into their case, then sweep the trash to the "
            "right side of the table with the broom."
        ),
        family="table_wiping",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(IMAGE_WIDTH, IMAGE_HEIGHT),
        objects=objects,
        subtask_goals=(
            (
                Predicate(
                    kind="inside_region",
                    obj="eyeglasses",
                    region=_deposit_region(case_x, case_y),
                ),
            ),
            (
                Predicate(kind="inside_region", obj="trash", region=right_strip),
                Predicate(kind="displaced_beyond", obj="trash", distance=0.2),
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Archetype: place an object on a station, then press a button
# ---------------------------------------------------------------------------


def build_watch_cleaning(seed: int | None = None) -> SceneSpec:
    jitter = _Jitter(seed)
    watch_x, watch_y, watch_yaw = jitter.pose(*tile_center(1, 4))
    station_x, station_y, station_yaw = jitter.pose(*tile_center(3, 3), anchor=True)
    button_x, button_y, button_yaw = jitter.pose(*tile_center(2, 2), anchor=True)

    objects = (
        ObjectSpec(
            name="watch",
            footprint=rectangle(0.035, 0.09),
            height=0.02,
            x=watch_x,
            y=watch_y,
            yaw=watch_yaw,
            color=(48, 48, 54),
        ),
        ObjectSpec(
            name="station",
            footprint=rectangle(0.256, 0.192),
            height=0.012,
            x=station_x,
            y=station_y,
            yaw=station_yaw,
            color=(118, 168, 198),
            mass_class=MASS_HEAVY,
        ),
        ObjectSpec(
            name="button",
            footprint=rectangle(0.04, 0.04),
            height=0.035,
            x=button_x,
            y=button_y,
            yaw=button_yaw,
            color=(204, 58, 58),
            mass_class=MASS_HEAVY,
            articulation=ArticulationSpec(
                kind=ARTICULATION_BUTTON,
                region=Region(
                    button_x - 0.03, button_y - 0.03, button_x + 0.03, button_y + 0.03
                ),
                z_max=0.04,
            ),
        ),
    )
    return SceneSpec(
        name=_scene_name("watch_cleaning", seed),
        instruction=(
            "Put the watch on the cleaning station, then press the button on "
            "the station."
        ),
        family="watch_cleaning",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(IMAGE_WIDTH, IMAGE_HEIGHT),
        objects=objects,
        subtask_goals=(
            (
                Predicate(
                    kind="inside_region",
                    obj="watch",
                    region=_deposit_region(station_x, station_y),
                ),
            ),
            (Predicate(kind="articulation_at", obj="button", value=1.0),),
        ),
    )


# ---------------------------------------------------------------------------
# Archetype: two pick-and-place motions into one receptacle
# ---------------------------------------------------------------------------


def build_gift_prep(seed: int | None = None) -> SceneSpec:
    jitter = _Jitter(seed)
    perfume_x, perfume_y, perfume_yaw = jitter.pose(*tile_center(1, 4))
    candy_x, candy_y, candy_yaw = jitter.pose(*tile_center(1, 2))
    box_x, box_y, box_yaw = jitter.pose(*tile_center(3, 3), anchor=True)

    objects = (
        ObjectSpec(
            name="perfume",
            footprint=rectangle(0.033, 0.12),
            height=0.055,
            x=perfume_x,
            y=perfume_y,
            yaw=perfume_yaw,
            color=(182, 142, 192),
        ),
        ObjectSpec(
            name="candy",
            footprint=rectangle(0.045, 0.045),
            height=0.02,
            x=candy_x,
            y=candy_y,
            yaw=candy_yaw,
            color=(222, 172, 60),
        ),
        ObjectSpec(
            name="gift_box",
            footprint=rectangle(0.256, 0.192),
            height=0.012,
            x=box_x,
            y=box_y,
            yaw=box_yaw,
            color=(172, 60, 92),
            mass_class=MASS_HEAVY,
        ),
    )
    box_region = _deposit_region(box_x, box_y)
    return SceneSpec(
        name=_scene_name("gift_prep", seed),
        instruction="Put the perfume bottle and the candy into the gift box.",
        family="gift_prep",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(IMAGE_WIDTH, IMAGE_HEIGHT),
        objects=objects,
        subtask_goals=(
            (Predicate(kind="inside_region", obj="perfume", region=box_region),),
            (Predicate(kind="inside_region", obj="candy", region=box_region),),
        ),
    )


# ---------------------------------------------------------------------------
# Archetype: pull a plug free, then slide a lid shut
# ---------------------------------------------------------------------------


def build_laptop_packing(seed: int | None = None) -> SceneSpec:
    jitter = _Jitter(seed)
    base_x, base_y, base_yaw = jitter.pose(0.0, 0.0, anchor=True)
    lid_x, lid_y, lid_yaw = jitter.pose(0.0, 0.20, anchor=True)
    # The cable starts fully clear of the laptop footprint (even under worst
    # case jitter and rotation) so its whole outline is visible from above.
    cable_x, cable_y, cable_yaw = jitter.pose(-0.24, 0.0, anchor=True)

    objects = (
        ObjectSpec(
            name="laptop",
            footprint=rectangle(0.30, 0.20),
            height=0.025,
            x=base_x,
            y=base_y,
            yaw=base_yaw,
            color=(88, 92, 102),
            mass_class=MASS_HEAVY,
            articulation=ArticulationSpec(
                kind=ARTICULATION_SLIDE,
                region=Region(base_x - 0.26, base_y - 0.04, base_x - 0.10, base_y + 0.04),
                direction=(-1.0, 0.0),
                travel=0.03,
                z_min=0.0,
                z_max=0.12,
            ),
        ),
        ObjectSpec(
            name="lid",
            footprint=rectangle(0.30, 0.18),
            height=0.012,
            x=lid_x,
            y=lid_y,
            yaw=lid_yaw,
            color=(120, 124, 134),
            mass_class=MASS_HEAVY,
            articulation=ArticulationSpec(
                kind=ARTICULATION_SLIDE,
                region=Region(lid_x - 0.15, lid_y - 0.09, lid_x + 0.15, lid_y + 0.09),
                direction=(0.0, -1.0),
                travel=0.06,
                z_min=0.0,
                z_max=0.05,
            ),
        ),
        ObjectSpec(
            name="cable",
            footprint=rectangle(0.12, 0.02),
            height=0.02,
            x=cable_x,
            y=cable_y,
            yaw=cable_yaw,
            color=(216, 216, 220),
        ),
    )
    return SceneSpec(
        name=_scene_name("laptop_packing", seed),
        instruction="Unplug the charging cable and close the lid of the laptop.",
        family="laptop_packing",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(IMAGE_WIDTH, IMAGE_HEIGHT),
        objects=objects,
        subtask_goals=(
            (
                Predicate(kind="articulation_at", obj="laptop", value=1.0),
                Predicate(kind="displaced_beyond", obj="cable", distance=0.15),
            ),
            (Predicate(kind="articulation_at", obj="lid", value=1.0),),
        ),
    )


# ---------------------------------------------------------------------------
# Unit-test fixture: one tool, one block, one goal
# ---------------------------------------------------------------------------


def build_sweep_fixture() -> SceneSpec:
    objects = (
        ObjectSpec(
            name="bar",
            footprint=rectangle(0.04, 0.2),
            height=0.04,
            x=-0.3,
            y=0.0,
            color=(150, 102, 51),
        ),
        ObjectSpec(
            name="block",
            footprint=rectangle(0.05, 0.05),
            height=0.025,
            x=0.0,
            y=0.0,
            color=(92, 138, 79),
        ),
    )
    return SceneSpec(
        name="sweep_fixture",
        instruction="Sweep the block to the right with the bar.",
        family="sweep_fixture",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(IMAGE_WIDTH, IMAGE_HEIGHT),
        objects=objects,
        subtask_goals=(
            (Predicate(kind="inside_region", obj="block", region=Region(0.3, -0.2, 0.635, 0.2)),),
        ),
    )


SCENE_BUILDERS = {
    "table_wiping": build_table_wiping,
    "watch_cleaning": build_watch_cleaning,
    "gift_prep": build_gift_prep,
    "laptop_packing": build_laptop_packing,
}


def build_scene(family: str, seed: int | None = None) -> SceneSpec:
    try:
        builder = SCENE_BUILDERS[family]
    except KeyError:
        raise ConfigError(
            f"unknown scene family {family!r}; available: {sorted(SCENE_BUILDERS)}"
        ) from None
    return builder(seed)


def load_packaged_scene(family: str) -> SceneSpec:
    """The canonical (unjittered) scene JSON shipped with the package."""
    import json
    from importlib import resources

    ref = resources.files("markmotion.assets.scenes").joinpath(f"{family}.json")
    try:
        text = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"no packaged scene named {family!r}") from None
    return SceneSpec.from_json_dict(json.loads(text))
