"""Object-mask providers behind one small interface.

The reasoning stages need a binary mask per named object. In simulation the
renderer already knows exact per-object visibility, so the default provider
reads masks straight out of the rendered observation. A real camera stack
would plug in here (an open-vocabulary detector plus a promptable segmenter)
without touching the rest of the pipeline.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from ..errors import UnknownObject
from ..geometry import BinaryMask
from ..sim import RenderResult


class SegmentationProvider(Protocol):
    def segment(
        self, observation: RenderResult, names: Sequence[str]
    ) -> dict[str, BinaryMask]:
        """A mask per requested object name, keyed by that name."""
        ...


class GroundTruthSegmenter:
    """Per-object masks from the renderer's own visibility buffer."""

    def segment(
        self, observation: RenderResult, names: Sequence[str]
    ) -> dict[str, BinaryMask]:
        missing = [n for n in names if n not in observation.masks]
        if missing:
            raise UnknownObject(
                f"no such object(s) {missing}; scene contains "
                f"{sorted(observation.masks)}"
            )
        return {n: observation.masks[n] for n in names}
