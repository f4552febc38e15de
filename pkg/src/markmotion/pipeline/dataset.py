"""Collecting successful runs into a training-ready dataset.

Each successful stage becomes one sample: the annotated observation the model
saw, the request it answered, its validated selections, the lifted 3-D
affordance, and the executed action stream. Samples are written as one JSONL
line each with stable relative paths, so the export directory is relocatable.
A manifest records per-family counts and flags families that fall short of
the minimum recommended sample count.
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path
from typing import Iterable

from ..errors import IoFailure

MIN_SAMPLES_PER_FAMILY = 50

_SAMPLE_FIELDS = (
    "sample_id",
    "family",
    "scene_name",
    "instruction",
    "stage_index",
    "request",
    "response",
    "affordance",
    "image",
    "actions",
    "steps",
)


def find_run_dirs(root: str | Path) -> list[Path]:
    """Every directory under ``root`` (or ``root`` itself) with a manifest."""
    root = Path(root)
    if (root / "manifest.json").exists():
        return [root]
    return sorted(d for d in root.iterdir() if (d / "manifest.json").exists())


def export_dataset(
    run_dirs: Iterable[str | Path],
    out_dir: str | Path,
    min_per_family: int = MIN_SAMPLES_PER_FAMILY,
) -> dict:
    """Write dataset.jsonl, copied artifacts, and a manifest; return the manifest."""
    out = Path(out_dir)
    (out / "images").mkdir(parents=True, exist_ok=True)
    (out / "actions").mkdir(parents=True, exist_ok=True)

    samples: list[dict] = []
    per_family: dict[str, int] = {}
    runs_seen = 0
    for run_dir in sorted(Path(d) for d in run_dirs):
        manifest_path = run_dir / "manifest.json"
        try:
            with open(manifest_path, "r", encoding="utf-8") as f:
                manifest = json.load(f)
        except OSError as exc:
            raise IoFailure(f"cannot read {manifest_path}: {exc}") from exc
        runs_seen += 1
        for stage in manifest["stages"]:
            if not stage["success"]:
                continue
            stage_dir = run_dir / stage["dir"]
            sample_id = f"{len(samples):05d}"
            image_rel = f"images/{sample_id}.png"
            actions_rel = f"actions/{sample_id}.jsonl"
            try:
                shutil.copyfile(stage_dir / "annotated.png", out / image_rel)
                shutil.copyfile(stage_dir / "actions.jsonl", out / actions_rel)
                with open(stage_dir / "affordance.json", "r", encoding="utf-8") as f:
                    affordance = json.load(f)
                request = (stage_dir / "request.txt").read_text(encoding="utf-8")
                response = (stage_dir / "response.txt").read_text(encoding="utf-8")
            except OSError as exc:
                raise IoFailure(
                    f"run {run_dir} stage {stage['dir']} is incomplete: {exc}"
                ) from exc
            family = manifest["family"]
            samples.append(
                {
                    "sample_id": sample_id,
                    "family": family,
                    "scene_name": manifest["scene_name"],
                    "instruction": stage["instruction"],
                    "stage_index": stage["index"],
                    "request": request,
                    "response": response,
                    "affordance": affordance,
                    "image": image_rel,
                    "actions": actions_rel,
                    "steps": stage["steps"],
                }
            )
            per_family[family] = per_family.get(family, 0) + 1

    with open(out / "dataset.jsonl", "w", encoding="utf-8") as f:
        for sample in samples:
            f.write(json.dumps(sample) + "\n")

    warnings = [
        f"family {family!r} has {count} samples, below the recommended {min_per_family}"
        for family, count in sorted(per_family.items())
        if count < min_per_family
    ]
    manifest = {
        "sample_count": len(samples),
        "runs_seen": runs_seen,
        "per_family": dict(sorted(per_family.items())),
        "min_per_family": min_per_family,
        "warnings": warnings,
        "fields": list(_SAMPLE_FIELDS),
    }
    with open(out / "manifest.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    return manifest
