"""HTTP client for a chat-completion-style endpoint with image support."""

from __future__ import annotations

import base64
import io
import os
import time

import numpy as np
import requests
from PIL import Image

from ..errors import ApiError, QueryTimeout, TransportError
from .messages import ImagePart, Message, TextPart, VlmConfig

MAX_IMAGE_LONG_SIDE_PX = 1024


def downscale_for_wire(pixels: np.ndarray, max_long_side: int = MAX_IMAGE_LONG_SIDE_PX) -> np.ndarray:
    """Shrink so the long side is at most `max_long_side`, preserving aspect."""
    h, w = pixels.shape[:2]
    long_side = max(h, w)
    if long_side <= max_long_side:
        return pixels
    scale = max_long_side / long_side
    new_w = max(1, int(round(w * scale)))
    new_h = max(1, int(round(h * scale)))
    img = Image.fromarray(pixels).resize((new_w, new_h), Image.BILINEAR)
    return np.asarray(img, dtype=np.uint8)


def encode_image_data_url(pixels: np.ndarray) -> str:
    shrunk = downscale_for_wire(pixels)
    buf = io.BytesIO()
    Image.fromarray(shrunk).save(buf, format="PNG")
    payload = base64.b64encode(buf.getvalue()).decode("ascii")
    return f"data:image/png;base64,{payload}"


def _content_of(message: Message) -> list:
    content = []
    for part in message.parts:
        if isinstance(part, TextPart):
            content.append({"type": "text", "text": part.text})
        elif isinstance(part, ImagePart):
            content.append(
                {"type": "image_url", "image_url": {"url": encode_image_data_url(part.pixels)}}
            )
        else:
            raise TypeError(f"unsupported part type {type(part).__name__}")
    return content


def build_request_body(messages, cfg: VlmConfig) -> dict:
    return {
        "model": cfg.model,
        "temperature": cfg.temperature,
        "max_tokens": cfg.max_tokens,
        "messages": [{"role": m.role, "content": _content_of(m)} for m in messages],
    }


def query(messages, cfg: VlmConfig) -> str:
    """Send one request; return the first choice's text.

    Transient transport failures (connection refused/reset, timeouts) retry up
    to cfg.max_retries times with exponential backoff; HTTP error statuses
    surface immediately as ApiError with the body attached.
    """
    if not messages:
        raise ValueError("messages must be non-empty")
    if not cfg.endpoint:
        raise ValueError("no endpoint configured")
    body = build_request_body(messages, cfg)
    headers = {"Content-Type": "application/json"}
    api_key = os.environ.get(cfg.api_key_env, "")
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"

    last_exc: Exception | None = None
    for attempt in range(cfg.max_retries + 1):
        if attempt > 0:
            time.sleep(cfg.retry_base_s * (2 ** (attempt - 1)))
        try:
            resp = requests.post(
                cfg.endpoint, json=body, headers=headers, timeout=cfg.timeout_s
            )
        except requests.Timeout as exc:
            last_exc = QueryTimeout(f"no response within {cfg.timeout_s} s: {exc}")
            continue
        except requests.RequestException as exc:
            last_exc = TransportError(f"cannot reach {cfg.endpoint}: {exc}")
            continue
        if resp.status_code != 200:
            raise ApiError(resp.status_code, resp.text)
        try:
            payload = resp.json()
            return str(payload["choices"][0]["message"]["content"])
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ApiError(resp.status_code, f"malformed response body: {resp.text[:500]}") from exc
    assert last_exc is not None
    raise last_exc
