"""Content model for a single multimodal query: ordered text and image parts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TextPart:
    text: str


class ImagePart:
    """An RGB image inside a prompt, with an id used in logs and transcripts."""

    __slots__ = ("pixels", "image_id")

    def __init__(self, pixels: np.ndarray, image_id: str = ""):
        arr = np.asarray(pixels, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"image part must be HxWx3 uint8, got shape {arr.shape}")
        object.__setattr__(self, "pixels", arr)
        object.__setattr__(self, "image_id", image_id)

    def __setattr__(self, name, value):
        raise AttributeError("ImagePart is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ImagePart)
            and self.image_id == other.image_id
            and np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self):
        h, w = self.pixels.shape[:2]
        return f"ImagePart({w}x{h}, id={self.image_id!r})"


Part = TextPart | ImagePart
PromptSequence = tuple  # tuple[Part, ...]

ROLES = ("system", "user", "assistant")


@dataclass(frozen=True)
class Message:
    """One chat turn: a role plus ordered text/image parts."""

    parts: tuple
    role: str = "user"

    def __post_init__(self):
        if len(self.parts) < 1:
            raise ValueError("a message needs at least one part")
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")


def user_message(sequence) -> Message:
    """Wrap an assembled prompt sequence as the single user turn it is sent as."""
    return Message(parts=tuple(sequence), role="user")


@dataclass(frozen=True)
class VlmConfig:
    """Decoding and transport settings for a model query."""

    endpoint: str = ""
    model: str = "scripted"
    temperature: float = 0.0
    max_tokens: int = 2048
    timeout_s: float = 60.0
    max_retries: int = 3
    retry_base_s: float = 0.25
    api_key_env: str = "VLM_API_KEY"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.timeout_s <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("retry count cannot be negative")


def text_of(sequence) -> str:
    """All text parts of a prompt sequence, joined in order, for logging."""
    return "\n".join(p.text for p in sequence if isinstance(p, TextPart))


def image_parts(sequence) -> list:
    return [p for p in sequence if isinstance(p, ImagePart)]


def message_texts(messages) -> str:
    """All text across a message list, for matching and logging."""
    return "\n".join(text_of(m.parts) for m in messages)
