"""File formats for depth images, masks, and camera models.

Depth travels as binary 16-bit PGM holding millimeters (0 = invalid reading).
Masks travel as 8-bit PNG with foreground 255 and background 0. Cameras travel
as JSON with intrinsics and a row-major 4x4 camera-to-world transform.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image

from .types import BinaryMask, CameraModel, DepthImage


def write_depth_pgm(depth: DepthImage, path: str | Path) -> None:
    mm = np.round(depth.data * 1000.0).astype(np.uint16)
    header = f"P5\n{depth.width} {depth.height}\n65535\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(mm.astype(">u2").tobytes())


def read_depth_pgm(path: str | Path) -> DepthImage:
    with open(path, "rb") as f:
        data = f.read()
    fields: list[bytes] = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P5":
        raise ValueError(f"not a binary PGM file: magic {fields[0]!r}")
    width, height, maxval = int(fields[1]), int(fields[2]), int(fields[3])
    if maxval != 65535:
        raise ValueError(f"expected 16-bit PGM (maxval 65535), got {maxval}")
    pos += 1  # single whitespace after maxval
    raw = np.frombuffer(data, dtype=">u2", count=width * height, offset=pos)
    mm = raw.reshape(height, width).astype(float)
    return DepthImage(mm / 1000.0)


def write_mask_png(mask: BinaryMask, path: str | Path) -> None:
    img = Image.fromarray(np.where(mask.bits, 255, 0).astype(np.uint8), mode="L")
    img.save(path, format="PNG")


def read_mask_png(path: str | Path) -> BinaryMask:
    arr = np.asarray(Image.open(path).convert("L"))
    return BinaryMask(arr >= 128)


def write_rgb_png(rgb: np.ndarray, path: str | Path) -> None:
    Image.fromarray(np.asarray(rgb, dtype=np.uint8), mode="RGB").save(path, format="PNG")


def read_rgb_png(path: str | Path) -> np.ndarray:
    return np.asarray(Image.open(path).convert("RGB"))


def write_camera_json(cam: CameraModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cam.to_json_dict(), indent=2) + "\n")


def read_camera_json(path: str | Path) -> CameraModel:
    return CameraModel.from_json_dict(json.loads(Path(path).read_text()))
