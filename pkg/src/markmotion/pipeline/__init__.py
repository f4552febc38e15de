"""Task orchestration: run, bootstrap, replay, and export."""

from .bootstrap import harvest_in_context, harvest_run_dir
from .dataset import MIN_SAMPLES_PER_FAMILY, export_dataset, find_run_dirs
from .replay import ReplayReport, replay_run
from .runner import (
    ABLATION_FLAGS,
    DEFAULT_PARSE_RETRIES,
    FAILURE_EXECUTION,
    FAILURE_NONE,
    FAILURE_REASONING,
    RunResult,
    StageOutcome,
    build_dual_markset,
    build_role_markset,
    run_ablation,
    run_task,
)
from .segmentation import GroundTruthSegmenter, SegmentationProvider

__all__ = [
    "ABLATION_FLAGS",
    "DEFAULT_PARSE_RETRIES",
    "FAILURE_EXECUTION",
    "FAILURE_NONE",
    "FAILURE_REASONING",
    "GroundTruthSegmenter",
    "MIN_SAMPLES_PER_FAMILY",
    "ReplayReport",
    "RunResult",
    "SegmentationProvider",
    "StageOutcome",
    "build_dual_markset",
    "build_role_markset",
    "export_dataset",
    "find_run_dirs",
    "harvest_in_context",
    "harvest_run_dir",
    "replay_run",
    "run_ablation",
    "run_task",
]
