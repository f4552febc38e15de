"""Goal checking over simulator state."""

from __future__ import annotations

from dataclasses import dataclass

from .engine import TabletopSim
from .types import (
    PREDICATE_ARTICULATION_AT,
    PREDICATE_CONTACT_MADE,
    PREDICATE_DISPLACED_BEYOND,
    PREDICATE_INSIDE_REGION,
    Predicate,
)


@dataclass(frozen=True)
class GoalReport:
    """Pass/fail verdicts for one group of goal predicates."""

    lines: tuple[tuple[str, bool], ...]

    @property
    def success(self) -> bool:
        return all(ok for _, ok in self.lines)

    def to_json_list(self) -> list:
        return [{"condition": text, "met": ok} for text, ok in self.lines]


def evaluate_predicate(sim: TabletopSim, predicate: Predicate) -> bool:
    if predicate.kind == PREDICATE_INSIDE_REGION:
        cx, cy = sim.object_world_centroid(predicate.obj)
        return predicate.region.contains(cx, cy)
    if predicate.kind == PREDICATE_DISPLACED_BEYOND:
        return sim.displacement(predicate.obj) >= predicate.distance
    if predicate.kind == PREDICATE_ARTICULATION_AT:
        return abs(sim.articulation_value(predicate.obj) - predicate.value) <= predicate.tol
    if predicate.kind == PREDICATE_CONTACT_MADE:
        return sim.contact_seen(predicate.obj, predicate.partner)
    raise AssertionError(f"unreachable predicate kind {predicate.kind!r}")


def evaluate_group(sim: TabletopSim, group: tuple[Predicate, ...]) -> GoalReport:
    return GoalReport(
        lines=tuple((p.describe(), evaluate_predicate(sim, p)) for p in group)
    )


def evaluate_all_goals(sim: TabletopSim) -> list[GoalReport]:
    return [evaluate_group(sim, group) for group in sim.scene.subtask_goals]
