"""End-to-end task execution: decompose, mark, query, plan, act, verify.

One run of `run_task` plays a full tabletop task in the simulator:

1. render the initial scene and ask the model for a subtask decomposition;
2. per subtask: return the arm to its neutral pose, render, segment the two
   named objects, draw candidate keypoints and the tile grid on the image,
   ask the model for point/waypoint selections, and validate the reply
   (re-asking with the error appended, a bounded number of times);
3. lift the selections to 3-D, choose a grasp, compile the two-phase motion,
   interpolate it into gripper actions, and execute them;
4. check that subtask's goal predicates before moving on.

Every exchange, image, selection, plan, action stream, and simulator state
is written under the run directory so the run can be replayed bit-for-bit
and harvested as future in-context examples. Failures are classified as
``reasoning`` (the model's output could not be used) or ``execution``
(a valid-looking plan did not achieve the goal).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from ..errors import (
    ConfigError,
    GeometryError,
    MarkError,
    MotionError,
    ParseError,
    ReasoningFailure,
    StageStepLimitExceeded,
    UnknownObject,
)
from ..geometry import write_rgb_png
from ..marks import (
    DEFAULT_BOUNDARY_POINTS,
    MarkSet,
    ROLE_GRASPED,
    ROLE_UNATTACHED,
    build_grid,
    propose_keypoints,
    render_marks,
    resolve_selection,
)
from ..motion import (
    H_ABOVE_DEFAULT_M,
    compile_motion,
    interpolate,
    lift_affordance,
    plan_grasp_phase,
    write_actions_jsonl,
)
from ..prompts import (
    AblationConfig,
    DEFAULT_ABLATION,
    DEFAULT_MAX_EXAMPLES,
    ExampleStore,
    TaskRequest,
    build_flat_prompt,
    build_high_level_prompt,
    build_low_level_prompt,
    parse_high_level_response,
    parse_low_level_response,
    select_in_context_examples,
    serialize_subtask,
)
from ..sim import SceneSpec, TabletopSim, evaluate_group
from ..vlm import ImagePart, TextPart, message_texts, user_message
from .segmentation import GroundTruthSegmenter, SegmentationProvider

Asker = Callable[[tuple], str]

FAILURE_NONE = "none"
FAILURE_REASONING = "reasoning"
FAILURE_EXECUTION = "execution"

ABLATION_FLAGS = ("disable_hierarchy", "disable_point_description", "disable_cot")

DEFAULT_PARSE_RETRIES = 2

_RETRY_TEXT = (
    "Your previous answer could not be used: {error}\n"
    "Answer the request again, keeping the same output format."
)

_RETRYABLE = (ParseError, MarkError)


@dataclass
class StageOutcome:
    """What happened in one subtask stage (or the single flat stage)."""

    index: int
    instruction: str
    object_grasped: str
    object_unattached: str
    request_text: str
    response_text: str
    success: bool
    steps: int
    goal_lines: list = field(default_factory=list)
    rel_dir: str = ""
    failure_kind: str = FAILURE_NONE
    failure_detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "instruction": self.instruction,
            "object_grasped": self.object_grasped,
            "object_unattached": self.object_unattached,
            "success": self.success,
            "steps": self.steps,
            "goals": self.goal_lines,
            "dir": self.rel_dir,
            "failure_kind": self.failure_kind,
            "failure_detail": self.failure_detail,
        }


@dataclass
class RunResult:
    """Summary of one task run plus pointers into its artifact directory."""

    run_dir: Path
    family: str
    scene_name: str
    instruction: str
    success: bool
    failure_kind: str
    failure_detail: str
    stages: list
    final_goal_lines: list = field(default_factory=list)
    scene_seed: int | None = None
    rng_seed: int = 0
    ablation_flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "scene_name": self.scene_name,
            "instruction": self.instruction,
            "success": self.success,
            "failure_kind": self.failure_kind,
            "failure_detail": self.failure_detail,
            "scene_seed": self.scene_seed,
            "rng_seed": self.rng_seed,
            "ablation_flags": list(self.ablation_flags),
            "stages": [s.to_json_dict() for s in self.stages],
            "final_goals": self.final_goal_lines,
        }


class _Transcript:
    """Ordered record of every model exchange in a run.

    Holds only text and stable image ids — no absolute paths, no timestamps —
    so two identical runs serialize to identical bytes.
    """

    def __init__(self):
        self.entries: list = []

    def record(self, stage: str, attempts: list) -> None:
        self.entries.append({"stage": stage, "attempts": attempts})

    def save(self, path: Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.entries, f, indent=2)
            f.write("\n")


def _ask_with_retries(
    ask: Asker,
    base_parts: Sequence,
    parse,
    transcript: _Transcript,
    stage: str,
    max_retries: int,
):
    """Query, validate, and on validation errors re-query with the error text.

    Each retry extends the original prompt with the rejected response and a
    correction request. Every attempt is recorded. When the budget runs out
    the last validation error is raised as a ReasoningFailure.
    """
    parts = list(base_parts)
    attempts: list = []
    last_error: Exception | None = None
    for _ in range(max_retries + 1):
        messages = (user_message(tuple(parts)),)
        response = ask(messages)
        attempts.append(
            {
                "request_text": message_texts(messages),
                "image_ids": [
                    p.image_id for p in parts if isinstance(p, ImagePart)
                ],
                "response_text": response,
            }
        )
        try:
            value = parse(response)
        except _RETRYABLE as err:
            last_error = err
            parts.append(TextPart(response))
            parts.append(TextPart(_RETRY_TEXT.format(error=err)))
            continue
        transcript.record(stage, attempts)
        return value, response
    transcript.record(stage, attempts)
    raise ReasoningFailure(
        f"{stage}: response still invalid after {max_retries} retries: {last_error}"
    )


def build_role_markset(
    masks: dict,
    grasped: str,
    unattached: str,
    image_size: tuple,
    k: int = DEFAULT_BOUNDARY_POINTS,
    image_id: str = "",
) -> tuple[MarkSet, dict]:
    """Candidates for the two role objects, plus a label->object-name map."""
    width, height = image_size
    candidates: list = []
    owners: dict = {}
    for role, name in ((ROLE_GRASPED, grasped), (ROLE_UNATTACHED, unattached)):
        if not name:
            continue
        cands = propose_keypoints(masks[name], role, k=k)
        owners.update({c.label: name for c in cands})
        candidates.extend(cands)
    markset = MarkSet(
        candidates=tuple(candidates),
        grid=build_grid(width, height),
        base_image_id=image_id,
    )
    return markset, owners


def build_dual_markset(
    masks: dict,
    names: Sequence[str],
    image_size: tuple,
    k: int = DEFAULT_BOUNDARY_POINTS,
    image_id: str = "",
) -> tuple[MarkSet, dict]:
    """Without a subtask decomposition every object is marked in both roles.

    Labels stay contiguous across objects (object j owns P<j*(k+1)> through
    P<j*(k+1)+k>, likewise for Q) so the model can name any object as the one
    to hold and any as the one acted upon.
    """
    width, height = image_size
    candidates: list = []
    owners: dict = {}
    for role in (ROLE_GRASPED, ROLE_UNATTACHED):
        start = 0
        for name in names:
            cands = propose_keypoints(masks[name], role, k=k, start_index=start)
            owners.update({c.label: name for c in cands})
            candidates.extend(cands)
            start += k + 1
    markset = MarkSet(
        candidates=tuple(candidates),
        grid=build_grid(width, height),
        base_image_id=image_id,
    )
    return markset, owners


def _stage_seed(rng_seed: int, stage_index: int) -> int:
    """Distinct deterministic seed per stage; the lifter also uses seed+1."""
    return rng_seed * 1009 + 11 * stage_index


def _run_stage(
    sim: TabletopSim,
    scene: SceneSpec,
    stage_index: int,
    subtask,
    ask: Asker,
    ablation: AblationConfig,
    examples: Sequence,
    run_dir: Path,
    transcript: _Transcript,
    segmenter: SegmentationProvider,
    rng_seed: int,
    max_parse_retries: int,
    goal_group,
    k: int,
    h_above: float,
) -> StageOutcome:
    stage_name = f"subtask_{stage_index:02d}"
    stage_dir = run_dir / stage_name
    stage_dir.mkdir(parents=True, exist_ok=True)

    outcome = StageOutcome(
        index=stage_index,
        instruction=subtask.instruction if subtask else scene.instruction,
        object_grasped=subtask.object_grasped if subtask else "",
        object_unattached=subtask.object_unattached if subtask else "",
        request_text="",
        response_text="",
        success=False,
        steps=0,
        rel_dir=stage_name,
    )

    if stage_index > 0:
        sim.reset_to_neutral()
    obs = sim.observe()

    # --- marks and the model query -------------------------------------
    try:
        if subtask is None:
            names = [o.name for o in scene.objects]
            masks = segmenter.segment(obs, names)
            markset, owners = build_dual_markset(
                masks, names, scene.image_size, k=k, image_id=f"{stage_name}_annotated"
            )
            annotated = render_marks(obs.rgb, markset)
            outcome.request_text = scene.instruction
            base = build_flat_prompt(
                TaskRequest(scene.instruction), annotated, examples
            )
            check_roles = False
        else:
            names = [
                n
                for n in (subtask.object_grasped, subtask.object_unattached)
                if n
            ]
            masks = segmenter.segment(obs, names)
            markset, owners = build_role_markset(
                masks,
                subtask.object_grasped,
                subtask.object_unattached,
                scene.image_size,
                k=k,
                image_id=f"{stage_name}_annotated",
            )
            annotated = render_marks(obs.rgb, markset)
            outcome.request_text = serialize_subtask(subtask)
            base = build_low_level_prompt(subtask, annotated, examples, ablation)
            check_roles = True
    except (UnknownObject, MarkError, GeometryError) as err:
        outcome.failure_kind = FAILURE_REASONING
        outcome.failure_detail = f"cannot mark the named objects: {err}"
        return outcome

    annotated.save(stage_dir / "annotated.png", stage_dir / "markset.json")
    (stage_dir / "request.txt").write_text(outcome.request_text, encoding="utf-8")

    try:
        resp, response_text = _ask_with_retries(
            ask,
            base,
            lambda text: parse_low_level_response(
                text, markset, check_role_consistency=check_roles
            ),
            transcript,
            stage_name,
            max_parse_retries,
        )
    except ReasoningFailure as err:
        outcome.failure_kind = FAILURE_REASONING
        outcome.failure_detail = str(err)
        return outcome
    outcome.response_text = response_text
    (stage_dir / "response.txt").write_text(response_text, encoding="utf-8")

    # --- lift, plan, interpolate ----------------------------------------
    seed = _stage_seed(rng_seed, stage_index)
    try:
        instance = lift_affordance(
            resp, markset, obs.depth, scene.camera, rng_seed=seed, h_above=h_above
        )
        grasp_pose = None
        if instance.grasp_point is not None:
            owner = owners[resolve_selection(markset, resp.grasp_keypoint).label]
            grasp_pose = plan_grasp_phase(
                instance, obs.depth, masks[owner], scene.camera, rng_seed=seed
            )
        plan = compile_motion(
            instance, grasp_pose, post_contact_height=resp.post_contact_height
        )
        interpolation = interpolate(plan, start=sim.gripper_pose())
    except (GeometryError, MotionError) as err:
        outcome.failure_kind = FAILURE_EXECUTION
        outcome.failure_detail = f"planning failed: {err}"
        return outcome

    with open(stage_dir / "affordance.json", "w", encoding="utf-8") as f:
        json.dump(instance.to_json_dict(), f, indent=2)
        f.write("\n")
    with open(stage_dir / "plan.json", "w", encoding="utf-8") as f:
        json.dump(plan.to_json_dict(), f, indent=2)
        f.write("\n")

    # --- execute ---------------------------------------------------------
    executed: list = []
    states: list = []
    step_limit_error = None
    for action in interpolation.actions:
        try:
            sim.step(action)
        except StageStepLimitExceeded as err:
            step_limit_error = err
            break
        executed.append(action)
        states.append(sim.state_dict())
    write_actions_jsonl(executed, stage_dir / "actions.jsonl")
    with open(stage_dir / "states.json", "w", encoding="utf-8") as f:
        json.dump(states, f)
        f.write("\n")
    outcome.steps = len(executed)
    if step_limit_error is not None:
        outcome.failure_kind = FAILURE_EXECUTION
        outcome.failure_detail = str(step_limit_error)
        return outcome

    # --- verify ------------------------------------------------------------
    if goal_group is not None:
        report = evaluate_group(sim, goal_group)
        outcome.goal_lines = report.to_json_list()
        if not report.success:
            unmet = [line["condition"] for line in outcome.goal_lines if not line["met"]]
            outcome.failure_kind = FAILURE_EXECUTION
            outcome.failure_detail = f"goals unmet: {'; '.join(unmet)}"
            return outcome

    outcome.success = True
    return outcome


def run_task(
    scene: SceneSpec,
    ask: Asker,
    out_dir: str | Path,
    *,
    example_store: ExampleStore | None = None,
    max_examples: int = DEFAULT_MAX_EXAMPLES,
    ablation: AblationConfig = DEFAULT_ABLATION,
    rng_seed: int = 0,
    scene_seed: int | None = None,
    max_parse_retries: int = DEFAULT_PARSE_RETRIES,
    segmenter: SegmentationProvider | None = None,
    keypoints_per_object: int = DEFAULT_BOUNDARY_POINTS,
    h_above: float = H_ABOVE_DEFAULT_M,
) -> RunResult:
    """Run one task end to end and write all artifacts under ``out_dir``.

    Returns a RunResult rather than raising on task failure; only caller
    errors (bad configuration, unwritable directories) raise.
    """
    run_dir = Path(out_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    segmenter = segmenter or GroundTruthSegmenter()
    transcript = _Transcript()

    sim = TabletopSim(scene)
    scene.save(run_dir / "scene.json")
    obs0 = sim.observe()
    write_rgb_png(obs0.rgb, run_dir / "initial.png")

    examples = (
        select_in_context_examples(example_store, scene.family, max_examples)
        if example_store is not None
        else ()
    )

    result = RunResult(
        run_dir=run_dir,
        family=scene.family,
        scene_name=scene.name,
        instruction=scene.instruction,
        success=False,
        failure_kind=FAILURE_NONE,
        failure_detail="",
        stages=[],
        scene_seed=scene_seed,
        rng_seed=rng_seed,
        ablation_flags=ablation.enabled_flags(),
    )

    # --- subtask decomposition -------------------------------------------
    subtasks: list
    if ablation.disable_hierarchy:
        subtasks = [None]
    else:
        try:
            plan, _ = _ask_with_retries(
                ask,
                build_high_level_prompt(TaskRequest(scene.instruction, obs0.rgb)),
                parse_high_level_response,
                transcript,
                "high_level",
                max_parse_retries,
            )
            subtasks = list(plan.subtasks)
        except ReasoningFailure as err:
            result.failure_kind = FAILURE_REASONING
            result.failure_detail = str(err)
            _finish(result, transcript, run_dir)
            return result

    # Goal groups pair with subtasks positionally when the decomposition has
    # the expected length; otherwise everything is checked once at the end.
    groups = list(scene.subtask_goals)
    paired = (not ablation.disable_hierarchy) and len(subtasks) == len(groups)

    for i, subtask in enumerate(subtasks):
        outcome = _run_stage(
            sim,
            scene,
            i,
            subtask,
            ask,
            ablation,
            examples,
            run_dir,
            transcript,
            segmenter,
            rng_seed,
            max_parse_retries,
            groups[i] if paired else None,
            keypoints_per_object,
            h_above,
        )
        result.stages.append(outcome)
        if not outcome.success:
            result.failure_kind = outcome.failure_kind
            result.failure_detail = f"subtask {i}: {outcome.failure_detail}"
            _finish(result, transcript, run_dir)
            return result

    if not paired:
        lines: list = []
        ok = True
        for group in groups:
            report = evaluate_group(sim, group)
            lines.extend(report.to_json_list())
            ok = ok and report.success
        result.final_goal_lines = lines
        if not ok:
            unmet = [line["condition"] for line in lines if not line["met"]]
            result.failure_kind = FAILURE_EXECUTION
            result.failure_detail = f"final goals unmet: {'; '.join(unmet)}"
            _finish(result, transcript, run_dir)
            return result

    result.success = True
    _finish(result, transcript, run_dir)
    return result


def _finish(result: RunResult, transcript: _Transcript, run_dir: Path) -> None:
    transcript.save(run_dir / "transcripts.json")
    with open(run_dir / "manifest.json", "w", encoding="utf-8") as f:
        json.dump(result.to_json_dict(), f, indent=2)
        f.write("\n")


def run_ablation(
    scene: SceneSpec,
    ask: Asker,
    out_dir: str | Path,
    flag: str,
    **kwargs,
) -> RunResult:
    """Run with exactly one prompting component removed."""
    if flag not in ABLATION_FLAGS:
        raise ConfigError(
            f"unknown ablation {flag!r}; choose one of {ABLATION_FLAGS}"
        )
    return run_task(
        scene, ask, out_dir, ablation=AblationConfig(**{flag: True}), **kwargs
    )
