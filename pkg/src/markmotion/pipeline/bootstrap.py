"""Turning successful runs into few-shot examples for later runs.

Each successful subtask contributes one (request, annotated image, response)
triple. The store keeps the image next to its JSONL index so a whole store
directory can be moved or shared; selection always prefers the newest
examples of the same task family.
"""

from __future__ import annotations

import shutil
from pathlib import Path

from ..errors import IoFailure
from ..prompts import ExampleRecord, ExampleStore
from .runner import RunResult


def harvest_in_context(result: RunResult, store: ExampleStore) -> int:
    """Append every successful stage of a run to the example store.

    Annotated images are copied into the store's directory under a
    collision-free name; records point at them relatively. Returns the
    number of examples added.
    """
    store.path.parent.mkdir(parents=True, exist_ok=True)
    added = 0
    existing = len(store.records())
    for stage in result.stages:
        if not stage.success:
            continue
        src = result.run_dir / stage.rel_dir / "annotated.png"
        if not src.exists():
            raise IoFailure(f"missing annotated image {src}")
        image_name = (
            f"{result.family}_{result.scene_name}_{stage.index:02d}"
            f"_{existing + added:04d}.png"
        )
        shutil.copyfile(src, store.path.parent / image_name)
        store.append(
            ExampleRecord(
                image_path=image_name,
                request=stage.request_text,
                response=stage.response_text,
                task_family=result.family,
                success=True,
            )
        )
        added += 1
    return added


def harvest_run_dir(run_dir: str | Path, store: ExampleStore) -> int:
    """Harvest from a run directory on disk (see `harvest_in_context`)."""
    import json

    run_dir = Path(run_dir)
    manifest_path = run_dir / "manifest.json"
    try:
        with open(manifest_path, "r", encoding="utf-8") as f:
            manifest = json.load(f)
    except OSError as exc:
        raise IoFailure(f"cannot read {manifest_path}: {exc}") from exc

    from .runner import StageOutcome

    result = RunResult(
        run_dir=run_dir,
        family=manifest["family"],
        scene_name=manifest["scene_name"],
        instruction=manifest["instruction"],
        success=manifest["success"],
        failure_kind=manifest["failure_kind"],
        failure_detail=manifest["failure_detail"],
        stages=[],
        scene_seed=manifest.get("scene_seed"),
        rng_seed=manifest.get("rng_seed", 0),
        ablation_flags=manifest.get("ablation_flags", []),
    )
    for s in manifest["stages"]:
        stage_dir = run_dir / s["dir"]
        response_path = stage_dir / "response.txt"
        response_text = (
            response_path.read_text(encoding="utf-8") if response_path.exists() else ""
        )
        request_path = stage_dir / "request.txt"
        request_text = (
            request_path.read_text(encoding="utf-8") if request_path.exists() else ""
        )
        result.stages.append(
            StageOutcome(
                index=s["index"],
                instruction=s["instruction"],
                object_grasped=s["object_grasped"],
                object_unattached=s["object_unattached"],
                request_text=request_text,
                response_text=response_text,
                success=s["success"],
                steps=s["steps"],
                goal_lines=s.get("goals", []),
                rel_dir=s["dir"],
            )
        )
    return harvest_in_context(result, store)
