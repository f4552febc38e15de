"""Command-line entry points.

Subcommands:

- ``run``             execute a task end to end and write a run directory
- ``annotate``        render a scene with keypoint marks and the tile grid
- ``replay``          re-execute a run's logged actions and verify states
- ``export-dataset``  collect successful runs into a JSONL dataset
- ``ablate``          run with exactly one prompting component removed

Exit codes: 0 success, 2 usage or configuration error, 3 the model's output
could not be used (reasoning failure), 4 the plan did not achieve the goal
or replay diverged (execution failure), 5 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import ConfigError, IoFailure, MarkMotionError, UnknownObject
from ..geometry import write_rgb_png
from ..marks import render_marks
from ..prompts import ExampleStore
from ..sim import SCENE_BUILDERS, SceneSpec, TabletopSim, build_scene
from ..vlm import OracleScript, VlmConfig, load_packaged_script, oracle_query, query
from .bootstrap import harvest_in_context
from .dataset import MIN_SAMPLES_PER_FAMILY, export_dataset, find_run_dirs
from .replay import replay_run
from .runner import (
    ABLATION_FLAGS,
    DEFAULT_PARSE_RETRIES,
    FAILURE_EXECUTION,
    FAILURE_NONE,
    FAILURE_REASONING,
    RunResult,
    build_dual_markset,
    build_role_markset,
    run_ablation,
    run_task,
)
from .segmentation import GroundTruthSegmenter

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REASONING = 3
EXIT_EXECUTION = 4
EXIT_IO = 5

_FAILURE_EXIT = {
    FAILURE_NONE: EXIT_OK,
    FAILURE_REASONING: EXIT_REASONING,
    FAILURE_EXECUTION: EXIT_EXECUTION,
}


def _add_scene_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        choices=sorted(SCENE_BUILDERS),
        help="built-in scene family to instantiate",
    )
    p.add_argument("--scene", help="path to a scene JSON file (overrides --family)")
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="scene jitter seed (default: the canonical layout)",
    )


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--oracle",
        default="",
        help=(
            "scripted responder: a JSON file path or a packaged script name "
            "(default: the script named after the scene family)"
        ),
    )
    p.add_argument("--endpoint", default="", help="HTTP endpoint of a live model")
    p.add_argument("--model", default="", help="model name for the HTTP endpoint")


def _add_run_args(p: argparse.ArgumentParser) -> None:
    _add_scene_args(p)
    _add_model_args(p)
    p.add_argument("--out", required=True, help="run directory to create")
    p.add_argument(
        "--rng-seed", type=int, default=0, help="seed for waypoint/grasp sampling"
    )
    p.add_argument(
        "--max-retries",
        type=int,
        default=DEFAULT_PARSE_RETRIES,
        help="re-asks allowed when a response fails validation",
    )
    p.add_argument("--examples", default="", help="example store JSONL for few-shot prompts")
    p.add_argument(
        "--harvest",
        action="store_true",
        help="append this run's successful stages to the example store",
    )


def _load_scene(args) -> SceneSpec:
    if args.scene:
        return SceneSpec.load(args.scene)
    if not args.family:
        raise ConfigError("provide --family or --scene")
    return build_scene(args.family, seed=args.seed)


def _make_asker(args, family: str):
    if args.endpoint:
        cfg = (
            VlmConfig(endpoint=args.endpoint, model=args.model)
            if args.model
            else VlmConfig(endpoint=args.endpoint)
        )
        return lambda messages: query(messages, cfg)
    name = args.oracle or family
    path = Path(name)
    if path.suffix == ".json" or path.exists():
        try:
            script = OracleScript.load(path)
        except OSError as exc:
            raise IoFailure(f"cannot read oracle script {path}: {exc}") from exc
    else:
        script = load_packaged_script(name)
    return lambda messages: oracle_query(messages, script)


def _print_result(result: RunResult) -> None:
    print(f"task: {result.instruction}")
    print(f"scene: {result.scene_name} (family {result.family})")
    for stage in result.stages:
        verdict = "ok" if stage.success else f"FAILED ({stage.failure_detail})"
        print(f"  subtask {stage.index:02d}: {stage.instruction} -- {verdict} "
              f"[{stage.steps} steps]")
    if result.success:
        print("result: success")
    else:
        print(f"result: {result.failure_kind} failure -- {result.failure_detail}")
    print(f"artifacts: {result.run_dir}")


def _cmd_run(args) -> int:
    scene = _load_scene(args)
    store = ExampleStore(args.examples) if args.examples else None
    if args.harvest and store is None:
        raise ConfigError("--harvest needs --examples to point at a store")
    ask = _make_asker(args, scene.family)
    result = run_task(
        scene,
        ask,
        args.out,
        example_store=store,
        rng_seed=args.rng_seed,
        scene_seed=args.seed,
        max_parse_retries=args.max_retries,
    )
    if result.success and args.harvest:
        added = harvest_in_context(result, store)
        print(f"harvested {added} example(s) into {store.path}")
    _print_result(result)
    return _FAILURE_EXIT[result.failure_kind]


def _cmd_ablate(args) -> int:
    chosen = [flag for flag in ABLATION_FLAGS if getattr(args, flag)]
    if len(chosen) != 1:
        raise ConfigError(
            "choose exactly one of --disable-hierarchy, "
            "--disable-point-description, --disable-cot"
        )
    scene = _load_scene(args)
    ask = _make_asker(args, scene.family)
    result = run_ablation(
        scene,
        ask,
        args.out,
        chosen[0],
        rng_seed=args.rng_seed,
        scene_seed=args.seed,
        max_parse_retries=args.max_retries,
    )
    _print_result(result)
    return _FAILURE_EXIT[result.failure_kind]


def _cmd_annotate(args) -> int:
    scene = _load_scene(args)
    sim = TabletopSim(scene)
    obs = sim.observe()
    segmenter = GroundTruthSegmenter()
    try:
        if args.grasped or args.unattached:
            names = [n for n in (args.grasped, args.unattached) if n]
            masks = segmenter.segment(obs, names)
            markset, _ = build_role_markset(
                masks,
                args.grasped,
                args.unattached,
                scene.image_size,
                image_id="annotate",
            )
        else:
            names = [o.name for o in scene.objects]
            masks = segmenter.segment(obs, names)
            markset, _ = build_dual_markset(
                masks, names, scene.image_size, image_id="annotate"
            )
    except UnknownObject as err:
        raise ConfigError(str(err)) from err
    annotated = render_marks(obs.rgb, markset)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_rgb_png(obs.rgb, out / "initial.png")
    annotated.save(out / "annotated.png", out / "markset.json")
    print(f"wrote {out / 'initial.png'}")
    print(f"wrote {out / 'annotated.png'} ({len(markset.candidates)} marks)")
    print(f"wrote {out / 'markset.json'}")
    return EXIT_OK


def _cmd_replay(args) -> int:
    report = replay_run(args.run_dir)
    print(json.dumps(report.to_json_dict(), indent=2))
    return EXIT_OK if report.match else EXIT_EXECUTION


def _cmd_export(args) -> int:
    run_dirs = find_run_dirs(args.runs)
    if not run_dirs:
        raise IoFailure(f"no run manifests found under {args.runs}")
    manifest = export_dataset(run_dirs, args.out, min_per_family=args.min_per_family)
    print(
        f"exported {manifest['sample_count']} sample(s) from "
        f"{manifest['runs_seen']} run(s) to {args.out}"
    )
    for family, count in manifest["per_family"].items():
        print(f"  {family}: {count}")
    for warning in manifest["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markmotion",
        description="Mark-based visual prompting for tabletop manipulation.",
        epilog=(
            "exit codes: 0 success, 2 usage/configuration, 3 reasoning failure, "
            "4 execution failure, 5 I/O error"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a task end to end")
    _add_run_args(run_p)
    run_p.set_defaults(handler=_cmd_run)

    annotate_p = sub.add_parser(
        "annotate", help="write the marked-up observation for a scene"
    )
    _add_scene_args(annotate_p)
    annotate_p.add_argument("--out", required=True, help="output directory")
    annotate_p.add_argument(
        "--grasped", default="", help="object to mark as held in hand"
    )
    annotate_p.add_argument(
        "--unattached", default="", help="object to mark as acted upon"
    )
    annotate_p.set_defaults(handler=_cmd_annotate)

    replay_p = sub.add_parser("replay", help="re-execute a run and verify it exactly")
    replay_p.add_argument("run_dir", help="run directory written by `run`")
    replay_p.set_defaults(handler=_cmd_replay)

    export_p = sub.add_parser(
        "export-dataset", help="collect successful runs into a dataset"
    )
    export_p.add_argument("--runs", required=True, help="directory containing run dirs")
    export_p.add_argument("--out", required=True, help="dataset output directory")
    export_p.add_argument(
        "--min-per-family",
        type=int,
        default=MIN_SAMPLES_PER_FAMILY,
        help="warn when a task family has fewer samples than this",
    )
    export_p.set_defaults(handler=_cmd_export)

    ablate_p = sub.add_parser("ablate", help="run with one prompt component removed")
    _add_run_args(ablate_p)
    ablate_p.add_argument("--disable-hierarchy", action="store_true",
                          help="skip decomposition; one flat query, all objects marked")
    ablate_p.add_argument("--disable-point-description", action="store_true",
                          help="drop the candidate-point definition block")
    ablate_p.add_argument("--disable-cot", action="store_true",
                          help="drop the step-by-step reasoning guidance")
    ablate_p.set_defaults(handler=_cmd_ablate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (IoFailure, OSError) as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    except MarkMotionError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_EXECUTION


if __name__ == "__main__":
    sys.exit(main())
