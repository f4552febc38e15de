"""Exception types shared across the package.

Errors are grouped by the layer that raises them; all inherit from
MarkMotionError so callers can catch the whole family at once.
"""


class MarkMotionError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------------------
# Geometry / image errors


class GeometryError(MarkMotionError):
    pass


class EmptyMask(GeometryError):
    """A binary mask has no foreground pixels."""


class DegenerateContour(GeometryError):
    """A contour is too small for the requested operation."""


class InvalidDepth(GeometryError):
    """No usable depth value can be resolved at a pixel."""


class BehindCamera(GeometryError):
    """A 3D point has non-positive camera-frame z and cannot be projected."""


class NoGraspFound(GeometryError):
    """No antipodal contact pair satisfies the friction-cone and aperture limits."""


class EmptyProposalSet(GeometryError):
    """nearest_grasp was called with an empty proposal list."""


class DimensionMismatch(GeometryError):
    """Image-like inputs disagree on width/height."""


# ---------------------------------------------------------------------------
# Mark / grid errors


class MarkError(MarkMotionError):
    pass


class MalformedTile(MarkError):
    """A tile name does not have the <column letter><row number> shape."""


class TileOutOfRange(MarkError):
    """A tile name parses but lies outside the grid."""


class UnknownLabel(MarkError):
    """A keypoint label is not present in the mark set."""


class MarkMismatch(MarkError):
    """A mark set's roles contradict the subtask it is being used for."""


# ---------------------------------------------------------------------------
# Response parsing errors


class ParseError(MarkMotionError):
    pass


class MalformedJson(ParseError):
    """No JSON payload could be decoded from the response text."""


class MissingField(ParseError):
    """A required field is absent from a parsed payload."""

    def __init__(self, field: str):
        super().__init__(f"missing required field: {field!r}")
        self.field = field


class EmptyPlan(ParseError):
    """A high-level response decoded to an empty subtask list."""


class InvalidOption(ParseError):
    """A field holds a value outside its closed option set."""

    def __init__(self, field: str, value: str, options):
        super().__init__(
            f"field {field!r} has invalid value {value!r}; expected one of {sorted(options)}"
        )
        self.field = field
        self.value = value


class ConsistencyViolation(ParseError):
    """Field emptiness contradicts the required biconditionals."""


# ---------------------------------------------------------------------------
# Motion errors


class MotionError(MarkMotionError):
    pass


class MissingPoints(MotionError):
    """A motion phase was requested without the points it needs."""


class DegenerateAxis(MotionError):
    """Grasp and function points coincide; no object axis exists."""


class PathTooLong(MotionError):
    """A single motion phase exceeds the per-phase action budget."""


# ---------------------------------------------------------------------------
# Simulation errors


class SimError(MarkMotionError):
    pass


class StageStepLimitExceeded(SimError):
    """The simulator was stepped past the per-stage step budget."""


class UnknownObject(SimError):
    """A name does not match any object in the scene."""


# ---------------------------------------------------------------------------
# VLM client errors


class VlmError(MarkMotionError):
    pass


class QueryTimeout(VlmError):
    """The endpoint did not answer within the configured timeout."""


class TransportError(VlmError):
    """The endpoint could not be reached (connection/socket failure)."""


class ApiError(VlmError):
    """The endpoint answered with a non-success status."""

    def __init__(self, status: int, body: str):
        super().__init__(f"API error {status}: {body[:200]}")
        self.status = status
        self.body = body


# ---------------------------------------------------------------------------
# Pipeline errors


class PipelineError(MarkMotionError):
    pass


class ReasoningFailure(PipelineError):
    """The VLM never produced a response that passed validation."""


class ExecutionFailure(PipelineError):
    """A validated plan could not be executed or did not reach its goal."""


class ConfigError(PipelineError):
    """A run configuration is internally inconsistent."""


class IoFailure(PipelineError):
    """A required file or directory could not be read or written."""
