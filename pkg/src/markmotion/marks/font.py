"""Tiny embedded 5x7 bitmap font, scaled 2x at draw time for 14 px tall text.

Rendering text from an embedded table keeps annotated images bit-identical
across platforms; no system font is ever consulted. Coverage is just what
mark labels need: digits, P, Q, and the first ten lowercase column letters.
"""

from __future__ import annotations

import numpy as np

_GLYPHS = {
    "0": [".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."],
    "1": ["..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."],
    "2": [".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"],
    "3": [".###.", "#...#", "....#", "..##.", "....#", "#...#", ".###."],
    "4": ["...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."],
    "5": ["#####", "#....", "####.", "....#", "....#", "#...#", ".###."],
    "6": ["..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."],
    "7": ["#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."],
    "8": [".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."],
    "9": [".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."],
    "P": ["####.", "#...#", "#...#", "####.", "#....", "#....", "#...."],
    "Q": [".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"],
    "a": [".....", ".....", ".###.", "....#", ".####", "#...#", ".####"],
    "b": ["#....", "#....", "####.", "#...#", "#...#", "#...#", "####."],
    "c": [".....", ".....", ".###.", "#....", "#....", "#...#", ".###."],
    "d": ["....#", "....#", ".####", "#...#", "#...#", "#...#", ".####"],
    "e": [".....", ".....", ".###.", "#...#", "#####", "#....", ".###."],
    "f": ["..##.", ".#..#", ".#...", "###..", ".#...", ".#...", ".#..."],
    "g": [".....", ".####", "#...#", "#...#", ".####", "....#", ".###."],
    "h": ["#....", "#....", "####.", "#...#", "#...#", "#...#", "#...#"],
    "i": ["..#..", ".....", ".##..", "..#..", "..#..", "..#..", ".###."],
    "j": ["...#.", ".....", "..##.", "...#.", "...#.", "#..#.", ".##.."],
    "?": ["#####", "#...#", "#...#", "#...#", "#...#", "#...#", "#####"],
}

SCALE = 2
GLYPH_WIDTH = 5 * SCALE
GLYPH_HEIGHT = 7 * SCALE  # 14 px caption height
GLYPH_SPACING = 1 * SCALE


def glyph_bitmap(char: str) -> np.ndarray:
    rows = _GLYPHS.get(char, _GLYPHS["?"])
    small = np.array([[c == "#" for c in row] for row in rows], dtype=bool)
    return np.kron(small, np.ones((SCALE, SCALE), dtype=bool))


def text_size(text: str) -> tuple[int, int]:
    """(width, height) in pixels of a rendered string."""
    if not text:
        return 0, GLYPH_HEIGHT
    width = len(text) * GLYPH_WIDTH + (len(text) - 1) * GLYPH_SPACING
    return width, GLYPH_HEIGHT


def draw_text(image: np.ndarray, top_left: tuple[int, int], text: str, color) -> None:
    """Blit text onto an RGB array in place; pixels outside the frame are dropped."""
    h, w = image.shape[:2]
    x = int(top_left[0])
    y = int(top_left[1])
    for char in text:
        bitmap = glyph_bitmap(char)
        for dv, du in zip(*np.nonzero(bitmap)):
            u, v = x + int(du), y + int(dv)
            if 0 <= u < w and 0 <= v < h:
                image[v, u] = color
        x += GLYPH_WIDTH + GLYPH_SPACING
