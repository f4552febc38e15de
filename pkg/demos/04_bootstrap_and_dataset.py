"""Bootstrap few-shot examples from successes, then export a dataset.

Successful stages are worth keeping: their (annotated image, point-selection
reply) pairs become in-context examples for later runs, and their logged
trajectories become training samples. This script runs a task, harvests its
stages into an example store, re-runs with those examples in the prompt, and
finally exports a small batch of runs as a JSONL dataset.

Run: python3 demos/04_bootstrap_and_dataset.py
"""

import functools
import json
import shutil
from pathlib import Path

from markmotion.pipeline.bootstrap import harvest_in_context
from markmotion.pipeline.dataset import export_dataset, find_run_dirs
from markmotion.pipeline.runner import run_task
from markmotion.prompts import ExampleStore
from markmotion.sim.scenes import SCENE_BUILDERS
from markmotion.vlm.oracle import load_packaged_script, oracle_query

OUT = Path(__file__).parent / "output" / "bootstrap_and_dataset"


def packaged_ask(family: str):
    return functools.partial(oracle_query, script=load_packaged_script(family))


def main() -> None:
    if OUT.exists():
        shutil.rmtree(OUT)
    OUT.mkdir(parents=True)

    # 1. Run once and harvest the successful exchanges.
    family = "table_wiping"
    store = ExampleStore(OUT / "examples" / "store.jsonl")
    first = run_task(
        SCENE_BUILDERS[family](seed=0), packaged_ask(family), OUT / "seed_run",
        rng_seed=0, scene_seed=0,
    )
    added = harvest_in_context(first, store)
    print(f"seed run: success={first.success}; harvested {added} example(s)")

    # 2. Re-run a jittered scene with the harvested examples in the prompt.
    second = run_task(
        SCENE_BUILDERS[family](seed=1), packaged_ask(family), OUT / "few_shot_run",
        rng_seed=1, scene_seed=1, example_store=store, max_examples=2,
    )
    transcript = json.loads((OUT / "few_shot_run" / "transcripts.json").read_text())
    stage_images = [
        e["attempts"][0]["image_ids"] for e in transcript if e["stage"] != "high_level"
    ]
    print(f"few-shot run: success={second.success}; "
          f"per-stage prompt images: {stage_images}")

    # 3. Batch a few runs and export every successful stage as a sample.
    runs_root = OUT / "batch"
    for family in ("table_wiping", "gift_prep"):
        ask = packaged_ask(family)
        for seed in range(3):
            run_task(
                SCENE_BUILDERS[family](seed), ask, runs_root / f"{family}_{seed}",
                rng_seed=seed, scene_seed=seed,
            )
    manifest = export_dataset(find_run_dirs(runs_root), OUT / "dataset",
                              min_per_family=3)
    print(f"\ndataset: {manifest['sample_count']} samples from "
          f"{manifest['runs_seen']} runs; per family: {manifest['per_family']}")
    if manifest["warnings"]:
        print(f"warnings: {manifest['warnings']}")
    sample = json.loads(
        (OUT / "dataset" / "dataset.jsonl").read_text().splitlines()[0]
    )
    print(f"sample 00000 fields: {sorted(sample)}")
    print(f"  instruction: {sample['instruction']!r}")
    print(f"  image: {sample['image']}  actions: {sample['actions']}  "
          f"steps: {sample['steps']}")


if __name__ == "__main__":
    main()
