"""Pure assembly of the query sequences sent to the model.

The template texts live as package assets; assembly only fills in the grid
naming and concatenates blocks, so the emitted bytes are stable and can be
pinned by golden files. Ablation variants delete whole blocks and change
nothing else.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..errors import MarkMismatch
from ..marks.grid import GridSpec
from ..marks.keypoints import MarkSet, ROLE_GRASPED, ROLE_UNATTACHED
from ..vlm.messages import ImagePart, TextPart
from .types import AblationConfig, DEFAULT_ABLATION, SubtaskSpec, TaskRequest

_BLOCK_SEP = "\n"


@lru_cache(maxsize=None)
def _asset(name: str) -> str:
    ref = resources.files("markmotion.assets.prompts").joinpath(name)
    return ref.read_text(encoding="utf-8")


def _cols_text(grid: GridSpec) -> str:
    return ", ".join(grid.column_names())


def _cols_quoted(grid: GridSpec) -> str:
    return ", ".join(f"'{c}'" for c in grid.column_names())


def _rows_text(grid: GridSpec) -> str:
    return ", ".join(grid.row_names())


def high_level_text() -> str:
    return _asset("high_level.txt")


def low_level_text(grid: GridSpec, ablation: AblationConfig = DEFAULT_ABLATION) -> str:
    """The full low-level instruction text for a given grid and ablation mode."""
    template = "flat_input_description.txt" if ablation.disable_hierarchy else "low_input_description.txt"
    blocks = [
        _asset(template).format(COLS=_cols_text(grid), ROWS=_rows_text(grid))
    ]
    if not ablation.disable_point_description:
        blocks.append(_asset("low_point_definitions.txt"))
    blocks.append(_asset("low_output_format.txt"))
    if not ablation.disable_cot:
        blocks.append(
            _asset("low_cot_guidance.txt").format(
                COLS_QUOTED=_cols_quoted(grid), ROWS=_rows_text(grid)
            )
        )
    return _BLOCK_SEP.join(blocks)


def point_definitions_block() -> str:
    """The deletable point-definition block, exactly as it appears in the default text."""
    return _asset("low_point_definitions.txt") + _BLOCK_SEP


def cot_guidance_block(grid: GridSpec) -> str:
    """The deletable step-by-step block, exactly as it appears in the default text."""
    return _BLOCK_SEP + _asset("low_cot_guidance.txt").format(
        COLS_QUOTED=_cols_quoted(grid), ROWS=_rows_text(grid)
    )


def _example_parts(examples) -> list:
    parts = []
    for ex in examples:
        if ex.request_text:
            parts.append(TextPart(ex.request_text))
        parts.append(ImagePart(ex.annotated_image, image_id="in_context_example"))
        parts.append(TextPart(ex.response_text))
    return parts


def build_high_level_prompt(task: TaskRequest, examples=()) -> tuple:
    """[instructions, example triples..., task instruction, scene image]."""
    parts = [TextPart(high_level_text())]
    parts.extend(_example_parts(examples))
    parts.append(TextPart(task.instruction))
    if task.initial_observation is not None:
        parts.append(ImagePart(task.initial_observation, image_id="initial_observation"))
    return tuple(parts)


def serialize_subtask(subtask: SubtaskSpec) -> str:
    return json.dumps(subtask.to_json_dict(), indent=2)


def _check_roles(markset: MarkSet, subtask: SubtaskSpec) -> None:
    pairs = (
        (ROLE_GRASPED, subtask.object_grasped, "object_grasped"),
        (ROLE_UNATTACHED, subtask.object_unattached, "object_unattached"),
    )
    for role, obj, field_name in pairs:
        if markset.has_role(role) != bool(obj):
            state = "has" if markset.has_role(role) else "lacks"
            raise MarkMismatch(
                f"mark set {state} {role!r} candidates but {field_name} is "
                f"{obj!r} for subtask {subtask.instruction!r}"
            )


def build_low_level_prompt(
    subtask: SubtaskSpec,
    annotated,
    examples=(),
    ablation: AblationConfig = DEFAULT_ABLATION,
) -> tuple:
    """[instructions, example triples..., subtask JSON, annotated image].

    Raises MarkMismatch when the annotated image's candidate roles contradict
    the subtask's object fields.
    """
    markset: MarkSet = annotated.markset
    _check_roles(markset, subtask)
    parts = [TextPart(low_level_text(markset.grid, ablation))]
    parts.extend(_example_parts(examples))
    parts.append(TextPart(serialize_subtask(subtask)))
    parts.append(ImagePart(annotated.pixels, image_id=markset.base_image_id or "annotated"))
    return tuple(parts)


def build_flat_prompt(task: TaskRequest, annotated, examples=()) -> tuple:
    """Single-stage variant: all objects carry marks and the raw instruction
    replaces the decomposed subtask record."""
    markset: MarkSet = annotated.markset
    ablation = AblationConfig(disable_hierarchy=True)
    parts = [TextPart(low_level_text(markset.grid, ablation))]
    parts.extend(_example_parts(examples))
    parts.append(TextPart(task.instruction))
    parts.append(ImagePart(annotated.pixels, image_id=markset.base_image_id or "annotated"))
    return tuple(parts)
