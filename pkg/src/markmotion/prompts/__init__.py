"""Prompt assembly, response parsing, and the few-shot example store."""

from .assembly import (
    build_flat_prompt,
    build_high_level_prompt,
    build_low_level_prompt,
    cot_guidance_block,
    high_level_text,
    low_level_text,
    point_definitions_block,
    serialize_subtask,
)
from .parsing import (
    parse_high_level_response,
    parse_low_level_response,
    serialize_affordance_response,
    serialize_high_level_plan,
)
from .store import (
    DEFAULT_MAX_EXAMPLES,
    ExampleRecord,
    ExampleStore,
    select_in_context_examples,
)
from .types import (
    ANGLE_OPTIONS,
    AblationConfig,
    AffordanceResponse,
    DEFAULT_ABLATION,
    HEIGHT_OPTIONS,
    HighLevelPlan,
    InContextExample,
    SubtaskSpec,
    TaskRequest,
)

__all__ = [
    "build_flat_prompt",
    "build_high_level_prompt",
    "build_low_level_prompt",
    "cot_guidance_block",
    "high_level_text",
    "low_level_text",
    "point_definitions_block",
    "serialize_subtask",
    "parse_high_level_response",
    "parse_low_level_response",
    "serialize_affordance_response",
    "serialize_high_level_plan",
    "DEFAULT_MAX_EXAMPLES",
    "ExampleRecord",
    "ExampleStore",
    "select_in_context_examples",
    "ANGLE_OPTIONS",
    "AblationConfig",
    "AffordanceResponse",
    "DEFAULT_ABLATION",
    "HEIGHT_OPTIONS",
    "HighLevelPlan",
    "InContextExample",
    "SubtaskSpec",
    "TaskRequest",
]
