"""Scene description types for the quasi-static tabletop simulator.

A scene is a set of extruded convex polygons on a flat table, observed by a
fixed camera, plus a parallel-jaw gripper and a list of goal predicates. All
specs serialize to plain JSON so scenes can be stored, shipped, and replayed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConsistencyViolation, IoFailure
from ..geometry import CameraModel

MASS_LIGHT = "light"
MASS_HEAVY = "heavy"
MASS_CLASSES = (MASS_LIGHT, MASS_HEAVY)

ARTICULATION_BUTTON = "button"
ARTICULATION_SLIDE = "slide"
ARTICULATION_KINDS = (ARTICULATION_BUTTON, ARTICULATION_SLIDE)

PREDICATE_INSIDE_REGION = "inside_region"
PREDICATE_DISPLACED_BEYOND = "displaced_beyond"
PREDICATE_ARTICULATION_AT = "articulation_at"
PREDICATE_CONTACT_MADE = "contact_made"
PREDICATE_KINDS = (
    PREDICATE_INSIDE_REGION,
    PREDICATE_DISPLACED_BEYOND,
    PREDICATE_ARTICULATION_AT,
    PREDICATE_CONTACT_MADE,
)


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle on the table plane, in world coordinates."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ConsistencyViolation(
                f"region must have positive extent, got {self}"
            )

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def polygon(self) -> tuple[tuple[float, float], ...]:
        return (
            (self.x0, self.y0),
            (self.x1, self.y0),
            (self.x1, self.y1),
            (self.x0, self.y1),
        )

    def to_json_list(self) -> list[float]:
        return [self.x0, self.y0, self.x1, self.y1]

    @classmethod
    def from_json_list(cls, payload) -> "Region":
        return cls(*(float(v) for v in payload))


@dataclass(frozen=True)
class ArticulationSpec:
    """A one-degree-of-freedom mechanism actuated through a trigger region.

    ``button``: the value latches to 1 when the gripper is inside the region
    and descends past ``z_max``.

    ``slide``: the value ratchets up by the component of per-step horizontal
    displacement along ``direction`` divided by ``travel`` while the gripper
    (or the object it carries) overlaps the region within the vertical band
    [z_min, z_max]. Backward motion never decreases the value.
    """

    kind: str
    region: Region
    direction: tuple[float, float] = (0.0, 0.0)
    travel: float = 0.0
    z_min: float = 0.0
    z_max: float = 0.05

    def __post_init__(self):
        if self.kind not in ARTICULATION_KINDS:
            raise ConsistencyViolation(f"unknown articulation kind {self.kind!r}")
        if self.kind == ARTICULATION_SLIDE:
            norm = math.hypot(*self.direction)
            if norm < 1e-9:
                raise ConsistencyViolation("slide articulation needs a direction")
            if self.travel <= 0:
                raise ConsistencyViolation("slide articulation needs positive travel")
            object.__setattr__(
                self, "direction", (self.direction[0] / norm, self.direction[1] / norm)
            )
        if self.z_max <= self.z_min:
            raise ConsistencyViolation("articulation needs z_max > z_min")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "region": self.region.to_json_list(),
            "direction": list(self.direction),
            "travel": self.travel,
            "z_min": self.z_min,
            "z_max": self.z_max,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ArticulationSpec":
        return cls(
            kind=payload["kind"],
            region=Region.from_json_list(payload["region"]),
            direction=tuple(payload.get("direction", (0.0, 0.0))),
            travel=float(payload.get("travel", 0.0)),
            z_min=float(payload.get("z_min", 0.0)),
            z_max=float(payload.get("z_max", 0.05)),
        )


@dataclass(frozen=True)
class ObjectSpec:
    """An extruded convex polygon resting on the table."""

    name: str
    footprint: tuple[tuple[float, float], ...]
    height: float
    x: float
    y: float
    yaw: float = 0.0
    color: tuple[int, int, int] = (120, 120, 120)
    mass_class: str = MASS_LIGHT
    articulation: ArticulationSpec | None = None

    def __post_init__(self):
        if len(self.footprint) < 3:
            raise ConsistencyViolation(
                f"object {self.name!r} needs at least 3 footprint vertices"
            )
        if self.height <= 0:
            raise ConsistencyViolation(f"object {self.name!r} needs positive height")
        if self.mass_class not in MASS_CLASSES:
            raise ConsistencyViolation(
                f"object {self.name!r} has unknown mass class {self.mass_class!r}"
            )
        object.__setattr__(
            self, "footprint", tuple((float(px), float(py)) for px, py in self.footprint)
        )
        object.__setattr__(self, "color", tuple(int(c) for c in self.color))

    def to_json_dict(self) -> dict:
        payload = {
            "name": self.name,
            "footprint": [list(v) for v in self.footprint],
            "height": self.height,
            "x": self.x,
            "y": self.y,
            "yaw": self.yaw,
            "color": list(self.color),
            "mass_class": self.mass_class,
        }
        if self.articulation is not None:
            payload["articulation"] = self.articulation.to_json_dict()
        return payload

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ObjectSpec":
        articulation = payload.get("articulation")
        return cls(
            name=payload["name"],
            footprint=tuple(tuple(v) for v in payload["footprint"]),
            height=float(payload["height"]),
            x=float(payload["x"]),
            y=float(payload["y"]),
            yaw=float(payload.get("yaw", 0.0)),
            color=tuple(payload.get("color", (120, 120, 120))),
            mass_class=payload.get("mass_class", MASS_LIGHT),
            articulation=(
                ArticulationSpec.from_json_dict(articulation) if articulation else None
            ),
        )


@dataclass(frozen=True)
class GripperSpec:
    """Parallel-jaw gripper limits and its out-of-view neutral pose."""

    neutral: tuple[float, float, float, float] = (0.0, -0.55, 0.2, 0.0)
    footprint_size: float = 0.04
    max_aperture: float = 0.085
    finger_halfheight: float = 0.02

    def to_json_dict(self) -> dict:
        return {
            "neutral": list(self.neutral),
            "footprint_size": self.footprint_size,
            "max_aperture": self.max_aperture,
            "finger_halfheight": self.finger_halfheight,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "GripperSpec":
        return cls(
            neutral=tuple(payload["neutral"]),
            footprint_size=float(payload["footprint_size"]),
            max_aperture=float(payload["max_aperture"]),
            finger_halfheight=float(payload["finger_halfheight"]),
        )


@dataclass(frozen=True)
class Predicate:
    """A single checkable goal condition over the simulator state."""

    kind: str
    obj: str = ""
    region: Region | None = None
    partner: str = ""
    distance: float = 0.0
    value: float = 1.0
    tol: float = 0.05

    def __post_init__(self):
        if self.kind not in PREDICATE_KINDS:
            raise ConsistencyViolation(f"unknown predicate kind {self.kind!r}")
        if self.kind == PREDICATE_INSIDE_REGION and self.region is None:
            raise ConsistencyViolation("inside_region predicate needs a region")
        if self.kind == PREDICATE_DISPLACED_BEYOND and self.distance <= 0:
            raise ConsistencyViolation("displaced_beyond needs a positive distance")
        if self.kind == PREDICATE_CONTACT_MADE and not self.partner:
            raise ConsistencyViolation("contact_made needs a partner object")
        if not self.obj:
            raise ConsistencyViolation("predicate needs an object name")

    def describe(self) -> str:
        if self.kind == PREDICATE_INSIDE_REGION:
            r = self.region
            return (
                f"{self.obj} centroid inside "
                f"[{r.x0:.3f},{r.x1:.3f}]x[{r.y0:.3f},{r.y1:.3f}]"
            )
        if self.kind == PREDICATE_DISPLACED_BEYOND:
            return f"{self.obj} displaced beyond {self.distance:.3f} m"
        if self.kind == PREDICATE_ARTICULATION_AT:
            return f"{self.obj} articulation at {self.value:.2f} (tol {self.tol:.2f})"
        return f"contact made between {self.obj} and {self.partner}"

    def to_json_dict(self) -> dict:
        payload: dict = {"kind": self.kind, "obj": self.obj}
        if self.region is not None:
            payload["region"] = self.region.to_json_list()
        if self.partner:
            payload["partner"] = self.partner
        if self.kind == PREDICATE_DISPLACED_BEYOND:
            payload["distance"] = self.distance
        if self.kind == PREDICATE_ARTICULATION_AT:
            payload["value"] = self.value
            payload["tol"] = self.tol
        return payload

    @classmethod
    def from_json_dict(cls, payload: dict) -> "Predicate":
        region = payload.get("region")
        return cls(
            kind=payload["kind"],
            obj=payload["obj"],
            region=Region.from_json_list(region) if region else None,
            partner=payload.get("partner", ""),
            distance=float(payload.get("distance", 0.0)),
            value=float(payload.get("value", 1.0)),
            tol=float(payload.get("tol", 0.05)),
        )


@dataclass(frozen=True)
class SceneSpec:
    """Everything needed to instantiate a simulation episode."""

    name: str
    instruction: str
    family: str
    table: tuple[float, float, float, float]
    camera: CameraModel
    image_size: tuple[int, int]
    objects: tuple[ObjectSpec, ...]
    gripper: GripperSpec = field(default_factory=GripperSpec)
    subtask_goals: tuple[tuple[Predicate, ...], ...] = ()

    def __post_init__(self):
        names = [o.name for o in self.objects]
        if len(set(names)) != len(names):
            raise ConsistencyViolation(f"duplicate object names in scene {self.name!r}")
        x0, y0, x1, y1 = self.table
        if x1 <= x0 or y1 <= y0:
            raise ConsistencyViolation("table bounds must have positive extent")
        referenced = {p.obj for group in self.subtask_goals for p in group}
        referenced |= {
            p.partner
            for group in self.subtask_goals
            for p in group
            if p.partner and p.partner != "gripper"
        }
        unknown = referenced - set(names)
        if unknown:
            raise ConsistencyViolation(
                f"goal predicates reference unknown objects: {sorted(unknown)}"
            )

    def object_named(self, name: str) -> ObjectSpec:
        for obj in self.objects:
            if obj.name == name:
                return obj
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "instruction": self.instruction,
            "family": self.family,
            "table": list(self.table),
            "camera": self.camera.to_json_dict(),
            "image_size": list(self.image_size),
            "gripper": self.gripper.to_json_dict(),
            "objects": [o.to_json_dict() for o in self.objects],
            "subtask_goals": [
                [p.to_json_dict() for p in group] for group in self.subtask_goals
            ],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "SceneSpec":
        return cls(
            name=payload["name"],
            instruction=payload["instruction"],
            family=payload["family"],
            table=tuple(payload["table"]),
            camera=CameraModel.from_json_dict(payload["camera"]),
            image_size=tuple(payload["image_size"]),
            gripper=GripperSpec.from_json_dict(payload["gripper"]),
            objects=tuple(ObjectSpec.from_json_dict(o) for o in payload["objects"]),
            subtask_goals=tuple(
                tuple(Predicate.from_json_dict(p) for p in group)
                for group in payload.get("subtask_goals", ())
            ),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "SceneSpec":
        try:
            payload = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise IoFailure(f"cannot load scene from {path}: {exc}") from exc
        return cls.from_json_dict(payload)
