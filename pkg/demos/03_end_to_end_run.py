"""Execute a multi-stage task end to end against the packaged scripted oracle.

One run is: decompose the instruction into subtasks, and for each subtask
annotate the scene, ask for point selections, compile them into a motion,
execute it closed-loop in the simulator, and check the stage's goal
predicates. Every exchange and every control step lands in the run
directory, so afterwards the run is replayed action-by-action and compared
state-for-state.

Run: python3 demos/03_end_to_end_run.py
"""

import functools
import json
from pathlib import Path

from markmotion.pipeline.replay import replay_run
from markmotion.pipeline.runner import run_task
from markmotion.sim.scenes import SCENE_BUILDERS
from markmotion.vlm.oracle import load_packaged_script, oracle_query

OUT = Path(__file__).parent / "output" / "end_to_end"


def main() -> None:
    family = "laptop_packing"
    scene = SCENE_BUILDERS[family](seed=3)
    ask = functools.partial(oracle_query, script=load_packaged_script(family))
    run_dir = OUT / "run"
    if run_dir.exists():
        import shutil

        shutil.rmtree(run_dir)

    print(f"task: {scene.instruction!r}")
    result = run_task(scene, ask, run_dir, rng_seed=3, scene_seed=3)
    print(f"result: {'success' if result.success else 'failure'}")
    for stage in result.stages:
        goals = ", ".join(
            f"{g['condition']} [{'met' if g['met'] else 'MISSED'}]"
            for g in stage.goal_lines
        ) or "-"
        print(f"  stage {stage.index}: {stage.instruction!r}")
        print(f"    grasped={stage.object_grasped or '-'} "
              f"unattached={stage.object_unattached or '-'} "
              f"steps={stage.steps} success={stage.success}")
        print(f"    goals: {goals}")

    print("\nrun directory:")
    for path in sorted(run_dir.rglob("*")):
        if path.is_file():
            print(f"  {path.relative_to(run_dir)}  ({path.stat().st_size} bytes)")

    report = replay_run(run_dir)
    print(f"\nreplay: match={report.match} stages={report.stages_checked} "
          f"steps={report.steps_checked}")

    transcripts = json.loads((run_dir / "transcripts.json").read_text())
    first = transcripts[0]
    attempt = first["attempts"][0]
    print(f"\nfirst transcript entry: stage={first['stage']!r}, "
          f"images={attempt['image_ids']}")
    print(f"  request starts:  {attempt['request_text'][0].splitlines()[0]!r}")
    print(f"  response starts: {attempt['response_text'].splitlines()[0]!r}")


if __name__ == "__main__":
    main()
