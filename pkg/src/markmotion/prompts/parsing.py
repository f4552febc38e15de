"""Parsing and validation of structured model responses."""

from __future__ import annotations

import json
import re

from ..errors import (
    ConsistencyViolation,
    EmptyPlan,
    InvalidOption,
    MalformedJson,
    MissingField,
)
from ..marks.grid import parse_tile_name
from ..marks.keypoints import MarkSet, ROLE_GRASPED, ROLE_UNATTACHED
from .types import (
    ANGLE_OPTIONS,
    AffordanceResponse,
    HEIGHT_OPTIONS,
    HighLevelPlan,
    SubtaskSpec,
)

_FENCE_RE = re.compile(r"```[a-zA-Z0-9_-]*\n?")

_SUBTASK_FIELDS = ("instruction", "object_grasped", "object_unattached", "motion_direction")
_RESPONSE_FIELDS = (
    "grasp_keypoint",
    "function_keypoint",
    "target_keypoint",
    "pre_contact_tile",
    "post_contact_tile",
    "pre_contact_height",
    "post_contact_height",
    "target_angle",
)


def _strip_fences(text: str) -> str:
    return _FENCE_RE.sub("", text)


def _extract_payload(text: str, opener: str):
    """(prose before the payload, decoded JSON value).

    Accepts free-form reasoning before a single JSON payload; the payload is
    the first decodable value starting at an occurrence of `opener`.
    """
    cleaned = _strip_fences(text)
    decoder = json.JSONDecoder()
    index = cleaned.find(opener)
    while index != -1:
        try:
            value, _ = decoder.raw_decode(cleaned, index)
        except json.JSONDecodeError:
            index = cleaned.find(opener, index + 1)
            continue
        return cleaned[:index].strip(), value
    raise MalformedJson(
        f"no JSON payload starting with {opener!r} found in response: {text[:200]!r}"
    )


def parse_high_level_response(text: str) -> HighLevelPlan:
    """Decode the subtask list. Raises MalformedJson / MissingField / EmptyPlan."""
    _, value = _extract_payload(text, "[")
    if not isinstance(value, list):
        raise MalformedJson(f"expected a JSON array of subtasks, got {type(value).__name__}")
    if len(value) == 0:
        raise EmptyPlan("the response decomposed the task into zero subtasks")
    subtasks = []
    for i, entry in enumerate(value):
        if not isinstance(entry, dict):
            raise MalformedJson(f"subtask {i} is not a JSON dictionary")
        for fld in _SUBTASK_FIELDS:
            if fld not in entry:
                raise MissingField(f"subtask {i} lacks field {fld!r}")
        subtasks.append(
            SubtaskSpec(
                instruction=str(entry["instruction"] or ""),
                object_grasped=str(entry["object_grasped"] or ""),
                object_unattached=str(entry["object_unattached"] or ""),
                motion_direction=str(entry["motion_direction"] or ""),
            )
        )
    return HighLevelPlan(subtasks=tuple(subtasks))


def serialize_high_level_plan(plan: HighLevelPlan) -> str:
    return json.dumps(plan.to_json_list(), indent=2)


def _opt_str(payload: dict, fld: str) -> str:
    if fld not in payload:
        raise MissingField(f"response lacks field {fld!r}")
    raw = payload[fld]
    if raw is None:
        return ""
    return str(raw).strip()


def _check_option(fld: str, value: str, options) -> str:
    lowered = value.lower()
    if lowered not in options:
        raise InvalidOption(fld, value, options)
    return lowered


def parse_low_level_response(
    text: str, markset: MarkSet, check_role_consistency: bool = True
) -> AffordanceResponse:
    """Decode and validate one motion selection against the mark set.

    Labels must exist in the mark set; tiles must exist in its grid; heights
    and orientation come from closed option sets. With role consistency on,
    the emptiness rules are enforced: grasp selections are required exactly
    when grasped-object candidates exist, target selections exactly when
    unattached-object candidates exist, and function selections exactly when
    both exist. Waypoint tiles/heights accompany the target selection, and an
    orientation requires both grasp and function points.
    """
    rationale, value = _extract_payload(text, "{")
    if not isinstance(value, dict):
        raise MalformedJson(f"expected a JSON dictionary, got {type(value).__name__}")

    raw = {fld: _opt_str(value, fld) for fld in _RESPONSE_FIELDS}

    def resolve_label(fld: str, role: str):
        if not raw[fld]:
            return None
        from ..marks.keypoints import resolve_selection

        cand = resolve_selection(markset, raw[fld])
        if cand.role != role:
            raise ConsistencyViolation(
                f"{fld} must name a {role!r} candidate, but {cand.label!r} marks "
                f"a {cand.role!r} one"
            )
        return cand.label

    grasp = resolve_label("grasp_keypoint", ROLE_GRASPED)
    function = resolve_label("function_keypoint", ROLE_GRASPED)
    target = resolve_label("target_keypoint", ROLE_UNATTACHED)

    pre_tile = parse_tile_name(markset.grid, raw["pre_contact_tile"]) if raw["pre_contact_tile"] else None
    post_tile = parse_tile_name(markset.grid, raw["post_contact_tile"]) if raw["post_contact_tile"] else None
    pre_h = _check_option("pre_contact_height", raw["pre_contact_height"], HEIGHT_OPTIONS) if raw["pre_contact_height"] else None
    post_h = _check_option("post_contact_height", raw["post_contact_height"], HEIGHT_OPTIONS) if raw["post_contact_height"] else None
    angle = _check_option("target_angle", raw["target_angle"], ANGLE_OPTIONS) if raw["target_angle"] else None

    if check_role_consistency:
        has_grasped = markset.has_role(ROLE_GRASPED)
        has_unattached = markset.has_role(ROLE_UNATTACHED)
        if (grasp is not None) != has_grasped:
            raise ConsistencyViolation(
                "grasp_keypoint must be selected exactly when the grasped object "
                f"is annotated (selected={grasp is not None}, annotated={has_grasped})"
            )
        if (function is not None) != (has_grasped and has_unattached):
            raise ConsistencyViolation(
                "function_keypoint must be selected exactly when both objects are "
                f"annotated (selected={function is not None}, "
                f"annotated={has_grasped and has_unattached})"
            )
        if (target is not None) != has_unattached:
            raise ConsistencyViolation(
                "target_keypoint must be selected exactly when the unattached "
                f"object is annotated (selected={target is not None}, "
                f"annotated={has_unattached})"
            )

    has_target = target is not None
    for fld, val in (
        ("pre_contact_tile", pre_tile),
        ("post_contact_tile", post_tile),
        ("pre_contact_height", pre_h),
        ("post_contact_height", post_h),
    ):
        if has_target and val is None:
            raise ConsistencyViolation(f"{fld} is required when target_keypoint is selected")
        if not has_target and val is not None:
            raise ConsistencyViolation(f"{fld} must be empty when target_keypoint is empty")

    if angle is not None and (grasp is None or function is None):
        raise ConsistencyViolation(
            "target_angle orients the grasp-to-function axis and requires both "
            "grasp_keypoint and function_keypoint"
        )

    return AffordanceResponse(
        grasp_keypoint=grasp,
        function_keypoint=function,
        target_keypoint=target,
        pre_contact_tile=pre_tile,
        post_contact_tile=post_tile,
        pre_contact_height=pre_h,
        post_contact_height=post_h,
        target_angle=angle,
        rationale_text=rationale,
    )


def serialize_affordance_response(response: AffordanceResponse) -> str:
    body = json.dumps(response.to_json_dict(), indent=2)
    if response.rationale_text:
        return response.rationale_text + "\n\n" + body
    return body
