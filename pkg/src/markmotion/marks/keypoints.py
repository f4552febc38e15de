"""Candidate keypoint proposal and the mark set that binds labels to pixels."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import UnknownLabel
from ..geometry import BinaryMask, Pixel, extract_contour, farthest_point_sampling, mask_centroid
from .grid import GridSpec

ROLE_GRASPED = "grasped"
ROLE_UNATTACHED = "unattached"
SOURCE_BOUNDARY = "boundary"
SOURCE_CENTER = "center"

DEFAULT_BOUNDARY_POINTS = 8

_ROLE_PREFIX = {ROLE_GRASPED: "P", ROLE_UNATTACHED: "Q"}


@dataclass(frozen=True)
class KeypointCandidate:
    label: str
    pixel: Pixel
    role: str
    source: str

    def __post_init__(self):
        if self.role not in _ROLE_PREFIX:
            raise ValueError(f"unknown role {self.role!r}")
        if self.source not in (SOURCE_BOUNDARY, SOURCE_CENTER):
            raise ValueError(f"unknown source {self.source!r}")
        if not self.label.startswith(_ROLE_PREFIX[self.role]):
            raise ValueError(f"label {self.label!r} does not match role {self.role!r}")


def propose_keypoints(
    mask: BinaryMask,
    role: str,
    k: int = DEFAULT_BOUNDARY_POINTS,
    start_index: int = 0,
) -> list[KeypointCandidate]:
    """k spread-out boundary points plus the mask center, labeled in order.

    Boundary points carry labels <prefix><start_index>.. in farthest-point
    selection order; the center point comes last. The prefix is P for the
    object to be held in hand and Q for the object acted upon.
    """
    prefix = _ROLE_PREFIX[role]
    contour = extract_contour(mask)
    center = mask_centroid(mask)
    boundary = farthest_point_sampling(contour, k, centroid=center)
    candidates = [
        KeypointCandidate(f"{prefix}{start_index + i}", p, role, SOURCE_BOUNDARY)
        for i, p in enumerate(boundary)
    ]
    candidates.append(
        KeypointCandidate(f"{prefix}{start_index + k}", center, role, SOURCE_CENTER)
    )
    return candidates


@dataclass(frozen=True)
class MarkSet:
    """Everything drawn on one annotated image: labeled candidates plus the grid."""

    candidates: tuple[KeypointCandidate, ...]
    grid: GridSpec
    base_image_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        seen = set()
        for cand in self.candidates:
            if cand.label in seen:
                raise ValueError(f"duplicate candidate label {cand.label!r}")
            seen.add(cand.label)

    def labels(self) -> list[str]:
        return [c.label for c in self.candidates]

    def has_role(self, role: str) -> bool:
        return any(c.role == role for c in self.candidates)

    def to_json_dict(self) -> dict:
        return {
            "candidates": [
                {
                    "label": c.label,
                    "u": int(c.pixel.u),
                    "v": int(c.pixel.v),
                    "role": c.role,
                    "source": c.source,
                }
                for c in self.candidates
            ],
            "grid": self.grid.to_json_dict(),
            "base_image_id": self.base_image_id,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "MarkSet":
        return cls(
            candidates=tuple(
                KeypointCandidate(
                    label=c["label"],
                    pixel=Pixel(int(c["u"]), int(c["v"])),
                    role=c["role"],
                    source=c["source"],
                )
                for c in payload["candidates"]
            ),
            grid=GridSpec.from_json_dict(payload["grid"]),
            base_image_id=payload.get("base_image_id", ""),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "MarkSet":
        return cls.from_json_dict(json.loads(Path(path).read_text()))


def resolve_selection(markset: MarkSet, label: str) -> KeypointCandidate:
    """Candidate with a given label (case-insensitive, whitespace-tolerant).

    UnknownLabel carries the list of valid labels so it can be echoed back to
    the model on a retry.
    """
    wanted = label.strip().lower()
    for cand in markset.candidates:
        if cand.label.lower() == wanted:
            return cand
    raise UnknownLabel(f"label {label!r} not in mark set; valid labels: {markset.labels()}")
