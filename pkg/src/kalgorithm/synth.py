"""Programmatic stroke drawing and a synthetic handwritten-page generator."""

from __future__ import annotations

import numpy as np

from .image import GrayImage
from .noise import uniforms


def line_points(x0: int, y0: int, x1: int, y1: int) -> list[tuple[int, int]]:
    """Bresenham rasterisation of a segment, endpoints included."""
    points = []
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        points.append((x, y))
        if x == x1 and y == y1:
            return points
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


def draw_line(arr: np.ndarray, x0: int, y0: int, x1: int, y1: int, value: int = 0,
              thickness: int = 1) -> None:
    """Draw in place; thickness grows the stroke right and down. Clipped to ``arr``."""
    height, width = arr.shape
    for x, y in line_points(x0, y0, x1, y1):
        for ty in range(thickness):
            for tx in range(thickness):
                if 0 <= x + tx < width and 0 <= y + ty < height:
                    arr[y + ty, x + tx] = value


def synthetic_document(width: int = 128, height: int = 128, seed: int = 0,
                       ink: int = 0, paper: int = 255) -> GrayImage:
    """White page with rows of scribbled glyphs.

    Each glyph is two to four connected segments inside a 6x9 cell, drawn
    one or two pixels thick. Layout is a pure function of ``seed``.
    """
    arr = np.full((height, width), paper, dtype=np.uint8)
    u = iter(uniforms(seed, 1 << 16).tolist())

    def randint(lo: int, hi: int) -> int:
        return lo + int(next(u) * (hi - lo + 1))

    margin, line_pitch, cell_w, cell_h = 6, 16, 8, 9
    y = margin
    while y + cell_h + margin <= height:
        x = margin + randint(0, 4)
        while x + cell_w + margin <= width:
            if next(u) < 0.15:  # word gap
                x += cell_w
                continue
            thickness = 1 if next(u) < 0.6 else 2
            px, py = x + randint(0, 5), y + randint(0, cell_h - 1)
            for _ in range(randint(2, 4)):
                nx, ny = x + randint(0, 5), y + randint(0, cell_h - 1)
                draw_line(arr, px, py, nx, ny, ink, thickness)
                px, py = nx, ny
            x += cell_w
        y += line_pitch
    return GrayImage(arr)
