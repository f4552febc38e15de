"""Bit-exact re-execution of logged runs.

A run directory fully determines its trajectory: the scene file pins the
world, the per-stage action streams pin the controls, and the logged state
sequence pins the expected outcome. Replaying steps the same actions through
a fresh simulator and compares every state dictionary for exact equality —
the simulator is deterministic, so any drift means the log and the code have
diverged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IoFailure, StageStepLimitExceeded
from ..motion import read_actions_jsonl
from ..sim import SceneSpec, TabletopSim


@dataclass
class ReplayReport:
    run_dir: Path
    stages_checked: int
    steps_checked: int
    mismatches: list = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "stages_checked": self.stages_checked,
            "steps_checked": self.steps_checked,
            "match": self.match,
            "mismatches": list(self.mismatches),
        }


def replay_run(run_dir: str | Path) -> ReplayReport:
    """Re-execute every logged action and compare states exactly."""
    run_dir = Path(run_dir)
    scene_path = run_dir / "scene.json"
    if not scene_path.exists():
        raise IoFailure(f"{run_dir} has no scene.json; nothing to replay")
    scene = SceneSpec.load(scene_path)
    sim = TabletopSim(scene)

    report = ReplayReport(run_dir=run_dir, stages_checked=0, steps_checked=0)
    stage_dirs = sorted(d for d in run_dir.glob("subtask_*") if d.is_dir())
    for i, stage_dir in enumerate(stage_dirs):
        actions_path = stage_dir / "actions.jsonl"
        states_path = stage_dir / "states.json"
        if i > 0:
            sim.reset_to_neutral()
        report.stages_checked += 1
        if not actions_path.exists():
            continue  # the stage failed before acting; nothing was logged
        actions = read_actions_jsonl(actions_path)
        with open(states_path, "r", encoding="utf-8") as f:
            states = json.load(f)
        if len(actions) != len(states):
            report.mismatches.append(
                f"{stage_dir.name}: {len(actions)} actions but {len(states)} states"
            )
            return report
        for j, action in enumerate(actions):
            try:
                sim.step(action)
            except StageStepLimitExceeded as err:
                report.mismatches.append(f"{stage_dir.name} step {j}: {err}")
                return report
            report.steps_checked += 1
            if sim.state_dict() != states[j]:
                report.mismatches.append(
                    f"{stage_dir.name} step {j}: state diverged from the log"
                )
                return report
    return report
