"""Append-only JSONL store of prior successful exchanges for few-shot reuse."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import IoFailure
from ..geometry import read_rgb_png
from .types import InContextExample

DEFAULT_MAX_EXAMPLES = 2


@dataclass(frozen=True)
class ExampleRecord:
    image_path: str
    request: str
    response: str
    task_family: str
    success: bool

    def to_json_dict(self) -> dict:
        return {
            "image_path": self.image_path,
            "request": self.request,
            "response": self.response,
            "task_family": self.task_family,
            "success": self.success,
        }


class ExampleStore:
    """One JSONL file; image paths are stored relative to the file's directory."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, record: ExampleRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record.to_json_dict()) + "\n")

    def records(self) -> list[ExampleRecord]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, "r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    d = json.loads(line)
                    out.append(
                        ExampleRecord(
                            image_path=str(d["image_path"]),
                            request=str(d["request"]),
                            response=str(d["response"]),
                            task_family=str(d["task_family"]),
                            success=bool(d["success"]),
                        )
                    )
                except (json.JSONDecodeError, KeyError) as exc:
                    raise IoFailure(f"{self.path}:{line_no}: bad example record: {exc}") from exc
        return out

    def select(self, task_family: str, max_n: int = DEFAULT_MAX_EXAMPLES) -> list[InContextExample]:
        """The newest successful exchanges for a task family, newest first."""
        chosen = [
            r
            for r in reversed(self.records())
            if r.success and r.task_family == task_family
        ][:max_n]
        out = []
        for rec in chosen:
            image_file = self.path.parent / rec.image_path
            try:
                pixels = read_rgb_png(image_file)
            except (OSError, ValueError) as exc:
                raise IoFailure(f"cannot load example image {image_file}: {exc}") from exc
            out.append(
                InContextExample(
                    annotated_image=pixels,
                    request_text=rec.request,
                    response_text=rec.response,
                )
            )
        return out


def select_in_context_examples(
    store: ExampleStore, task_family: str, max_n: int = DEFAULT_MAX_EXAMPLES
) -> list[InContextExample]:
    return store.select(task_family, max_n)
