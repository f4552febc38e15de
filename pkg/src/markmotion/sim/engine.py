"""Deterministic quasi-static tabletop simulator.

The world is 2.5-dimensional: convex extruded objects slide on a table plane,
a parallel-jaw gripper moves in SE(2) x z, and all interactions resolve
instantly once per control tick. There is no momentum and no timestep
subdivision, which keeps every trajectory exactly reproducible.

Mechanics, all gated on vertical overlap so flying over an object never
disturbs it:

- grasping: on a closing gripper command, an object is attached when the jaw
  line cuts a chord through its footprint no wider than the jaw span, roughly
  centered between the fingers, at a reachable height; it then follows the
  gripper rigidly until the jaws reopen, at which point it drops to the table.
- pushing: a moving gripper (or the object it carries) that overlaps a light
  object carries it along by the same horizontal displacement.
- articulation: buttons latch when the gripper descends past their trigger
  height inside the trigger region; sliding mechanisms (lids, plugs, drawers)
  ratchet forward by the displacement component along their axis while the
  trigger region is swept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConsistencyViolation, StageStepLimitExceeded
from ..motion.types import (
    CONTROL_RATE_HZ,
    GRIPPER_OPEN_M,
    MAX_STEPS_PER_PHASE,
    Action,
    Point3,
    Pose,
)
from .render import RenderResult, render_scene
from .shapes import (
    convex_overlap,
    line_chord,
    polygon_centroid,
    square_polygon,
    transform_polygon,
    vertical_overlap,
)
from .types import (
    ARTICULATION_BUTTON,
    ARTICULATION_SLIDE,
    MASS_LIGHT,
    SceneSpec,
)

ATTACH_CENTER_TOL_M = 0.01
ATTACH_HEIGHT_TOL_M = 0.01
GRIPPER_NAME = "gripper"
MAX_GRIPPER_Z_M = 1.0


@dataclass
class _ObjectState:
    x: float
    y: float
    yaw: float
    z_base: float = 0.0
    articulation_value: float = 0.0


@dataclass(frozen=True)
class StepInfo:
    """What changed during one control tick."""

    step_index: int
    gripper: Pose
    attached: str | None
    new_contacts: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class _Attachment:
    name: str
    rel_x: float
    rel_y: float
    rel_yaw: float
    z_base_ref: float
    gripper_z_ref: float
    width: float


class TabletopSim:
    """Simulates one episode of a scene at a fixed control rate."""

    def __init__(
        self,
        scene: SceneSpec,
        control_rate_hz: float = CONTROL_RATE_HZ,
        max_steps_per_stage: int = MAX_STEPS_PER_PHASE,
    ):
        if control_rate_hz <= 0:
            raise ConsistencyViolation("control rate must be positive")
        self.scene = scene
        self.dt = 1.0 / control_rate_hz
        self.max_steps_per_stage = max_steps_per_stage
        self._objects = {
            spec.name: _ObjectState(spec.x, spec.y, spec.yaw) for spec in scene.objects
        }
        self._initial_xy = {spec.name: (spec.x, spec.y) for spec in scene.objects}
        gx, gy, gz, gyaw = scene.gripper.neutral
        self._gx, self._gy, self._gz, self._gyaw = gx, gy, gz, gyaw
        self._aperture = scene.gripper.max_aperture
        self._last_command = scene.gripper.max_aperture
        self._attachment: _Attachment | None = None
        self._contact_history: set[tuple[str, str]] = set()
        self.stage_steps = 0
        self.stage_index = 0

    # ------------------------------------------------------------------
    # Introspection
    # ------------------------------------------------------------------

    @property
    def attached_object(self) -> str | None:
        return self._attachment.name if self._attachment else None

    def gripper_pose(self) -> Pose:
        return Pose(
            position=Point3(self._gx, self._gy, self._gz),
            yaw=self._gyaw,
            aperture=self._aperture,
        )

    def object_pose(self, name: str) -> tuple[float, float, float, float]:
        state = self._objects[name]
        return (state.x, state.y, state.yaw, state.z_base)

    def object_world_footprint(self, name: str) -> np.ndarray:
        spec = self.scene.object_named(name)
        state = self._objects[name]
        return transform_polygon(spec.footprint, state.x, state.y, state.yaw)

    def object_world_centroid(self, name: str) -> tuple[float, float]:
        return polygon_centroid(self.object_world_footprint(name))

    def displacement(self, name: str) -> float:
        state = self._objects[name]
        x0, y0 = self._initial_xy[name]
        return math.hypot(state.x - x0, state.y - y0)

    def articulation_value(self, name: str) -> float:
        return self._objects[name].articulation_value

    def contact_seen(self, a: str, b: str) -> bool:
        return tuple(sorted((a, b))) in self._contact_history

    def observe(self, include_gripper: bool = True) -> RenderResult:
        poses = {
            name: (s.x, s.y, s.yaw, s.z_base) for name, s in self._objects.items()
        }
        gripper = (
            (self._gx, self._gy, self._gz, self._gyaw) if include_gripper else None
        )
        return render_scene(self.scene, poses, gripper)

    def state_dict(self) -> dict:
        return {
            "gripper": [self._gx, self._gy, self._gz, self._gyaw, self._aperture],
            "attached": self.attached_object,
            "objects": {
                name: [s.x, s.y, s.yaw, s.z_base, s.articulation_value]
                for name, s in sorted(self._objects.items())
            },
            "contacts": sorted(list(pair) for pair in self._contact_history),
            "stage_index": self.stage_index,
            "stage_steps": self.stage_steps,
        }

    # ------------------------------------------------------------------
    # Stage control
    # ------------------------------------------------------------------

    def reset_to_neutral(self) -> None:
        """Teleport the gripper home between stages, keeping what it holds."""
        gx, gy, gz, gyaw = self.scene.gripper.neutral
        self._gx, self._gy, self._gz, self._gyaw = gx, gy, gz, gyaw
        self._follow_attachment()
        self.stage_steps = 0
        self.stage_index += 1

    # ------------------------------------------------------------------
    # Stepping
    # ------------------------------------------------------------------

    def step(self, action: Action) -> StepInfo:
        self.stage_steps += 1
        if self.stage_steps > self.max_steps_per_stage:
            raise StageStepLimitExceeded(
                f"stage {self.stage_index} exceeded "
                f"{self.max_steps_per_stage} control steps"
            )
        prev_z = self._gz
        prev_x, prev_y = self._gx, self._gy

        # The gripper may travel beyond the table edge (its neutral pose is out
        # of view); only its height is physically limited.
        self._gx += action.vx * self.dt
        self._gy += action.vy * self.dt
        self._gz += action.vz * self.dt
        self._gyaw += action.wz * self.dt
        self._gz = min(max(self._gz, 0.0), MAX_GRIPPER_Z_M)
        moved = (self._gx - prev_x, self._gy - prev_y)

        command = min(max(action.gripper, 0.0), self.scene.gripper.max_aperture)
        closing = command < self._last_command - 1e-9
        opening = command > self._last_command + 1e-9
        self._last_command = command
        self._aperture = command

        if opening and self._attachment is not None:
            held = self._objects[self._attachment.name]
            held.z_base = 0.0
            self._attachment = None

        self._follow_attachment()
        if closing and self._attachment is None:
            self._try_attach()
        self._apply_pushes(moved)
        self._advance_articulations(moved, prev_z)
        new_contacts = self._record_contacts()

        return StepInfo(
            step_index=self.stage_steps,
            gripper=self.gripper_pose(),
            attached=self.attached_object,
            new_contacts=new_contacts,
        )

    # ------------------------------------------------------------------
    # Internals
    # ------------------------------------------------------------------

    def _gripper_interval(self) -> tuple[float, float]:
        half = self.scene.gripper.finger_halfheight
        return (self._gz - half, self._gz + half)

    def _gripper_footprint(self) -> np.ndarray:
        return square_polygon(
            self._gx, self._gy, self.scene.gripper.footprint_size, self._gyaw
        )

    def _follow_attachment(self) -> None:
        att = self._attachment
        if att is None:
            return
        state = self._objects[att.name]
        c, s = math.cos(self._gyaw), math.sin(self._gyaw)
        state.x = self._gx + c * att.rel_x - s * att.rel_y
        state.y = self._gy + s * att.rel_x + c * att.rel_y
        state.yaw = self._gyaw + att.rel_yaw
        state.z_base = max(0.0, att.z_base_ref + (self._gz - att.gripper_z_ref))

    def _try_attach(self) -> None:
        direction = (math.cos(self._gyaw), math.sin(self._gyaw))
        best: tuple[float, _Attachment] | None = None
        for spec in self.scene.objects:
            if spec.mass_class != MASS_LIGHT:
                continue
            state = self._objects[spec.name]
            top = state.z_base + spec.height
            if not (
                state.z_base - ATTACH_HEIGHT_TOL_M
                <= self._gz
                <= top + ATTACH_HEIGHT_TOL_M
            ):
                continue
            world = transform_polygon(spec.footprint, state.x, state.y, state.yaw)
            chord = line_chord(world, (self._gx, self._gy), direction)
            if chord is None:
                continue
            t_enter, t_exit = chord
            width = t_exit - t_enter
            center_offset = abs(t_enter + t_exit) / 2.0
            if width <= 1e-9 or width > self.scene.gripper.max_aperture + 1e-9:
                continue
            if center_offset > ATTACH_CENTER_TOL_M:
                continue
            if best is None or center_offset < best[0]:
                c, s = math.cos(-self._gyaw), math.sin(-self._gyaw)
                dx, dy = state.x - self._gx, state.y - self._gy
                best = (
                    center_offset,
                    _Attachment(
                        name=spec.name,
                        rel_x=c * dx - s * dy,
                        rel_y=s * dx + c * dy,
                        rel_yaw=state.yaw - self._gyaw,
                        z_base_ref=state.z_base,
                        gripper_z_ref=self._gz,
                        width=width,
                    ),
                )
        if best is not None:
            self._attachment = best[1]

    def _pushers(self) -> list[tuple[np.ndarray, tuple[float, float]]]:
        pushers = [(self._gripper_footprint(), self._gripper_interval())]
        att = self._attachment
        if att is not None:
            spec = self.scene.object_named(att.name)
            state = self._objects[att.name]
            pushers.append(
                (
                    transform_polygon(spec.footprint, state.x, state.y, state.yaw),
                    (state.z_base, state.z_base + spec.height),
                )
            )
        return pushers

    def _apply_pushes(self, moved: tuple[float, float]) -> None:
        dx, dy = moved
        if abs(dx) < 1e-12 and abs(dy) < 1e-12:
            return
        pushers = self._pushers()
        held = self.attached_object
        for spec in self.scene.objects:
            if spec.mass_class != MASS_LIGHT or spec.name == held:
                continue
            state = self._objects[spec.name]
            world = transform_polygon(spec.footprint, state.x, state.y, state.yaw)
            interval = (state.z_base, state.z_base + spec.height)
            for footprint, z_range in pushers:
                if vertical_overlap(*z_range, *interval) and convex_overlap(
                    footprint, world
                ):
                    state.x += dx
                    state.y += dy
                    self._clamp_to_table(spec.name)
                    break

    def _clamp_to_table(self, name: str) -> None:
        x0, y0, x1, y1 = self.scene.table
        state = self._objects[name]
        cx, cy = self.object_world_centroid(name)
        margin = 0.01
        shift_x = min(max(cx, x0 + margin), x1 - margin) - cx
        shift_y = min(max(cy, y0 + margin), y1 - margin) - cy
        state.x += shift_x
        state.y += shift_y

    def _advance_articulations(
        self, moved: tuple[float, float], prev_z: float
    ) -> None:
        pushers = self._pushers()
        for spec in self.scene.objects:
            art = spec.articulation
            if art is None:
                continue
            state = self._objects[spec.name]
            if art.kind == ARTICULATION_BUTTON:
                if (
                    state.articulation_value < 1.0
                    and art.region.contains(self._gx, self._gy)
                    and prev_z > art.z_max >= self._gz
                ):
                    state.articulation_value = 1.0
                continue
            if art.kind == ARTICULATION_SLIDE:
                advance = moved[0] * art.direction[0] + moved[1] * art.direction[1]
                if advance <= 0:
                    continue
                region_poly = np.asarray(art.region.polygon())
                engaged = any(
                    vertical_overlap(z_lo, z_hi, art.z_min, art.z_max)
                    and convex_overlap(footprint, region_poly)
                    for footprint, (z_lo, z_hi) in pushers
                )
                if engaged:
                    state.articulation_value = min(
                        1.0, state.articulation_value + advance / art.travel
                    )

    def _record_contacts(self) -> tuple[tuple[str, str], ...]:
        footprints = {}
        intervals = {}
        for spec in self.scene.objects:
            state = self._objects[spec.name]
            footprints[spec.name] = transform_polygon(
                spec.footprint, state.x, state.y, state.yaw
            )
            intervals[spec.name] = (state.z_base, state.z_base + spec.height)
        footprints[GRIPPER_NAME] = self._gripper_footprint()
        intervals[GRIPPER_NAME] = self._gripper_interval()

        names = sorted(footprints)
        fresh: list[tuple[str, str]] = []
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                pair = (a, b)
                if pair in self._contact_history:
                    continue
                if vertical_overlap(*intervals[a], *intervals[b]) and convex_overlap(
                    footprints[a], footprints[b]
                ):
                    self._contact_history.add(pair)
                    fresh.append(pair)
        return tuple(fresh)
