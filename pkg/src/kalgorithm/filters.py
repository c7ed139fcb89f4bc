"""Clipped-neighbourhood median filtering and the K-Algorithm conditional filter.

Windows span offsets ``-matrix_size/2 .. +matrix_size/2`` around the centre
pixel, so ``matrix_size=2`` is a 3x3 window. Neighbours outside the image are
skipped (no padding), which shrinks windows along the border.

The conditional filter replaces a pixel by its window median only when the
darkest intensity in the window occurs exactly ``k`` times. With a 3x3 window
and ``k=1`` this removes isolated dark specks while leaving any window that
holds two or more equally dark pixels (a stroke) untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .image import GrayImage

FilterMode = Literal["buffered", "paper_literal"]

# rows per vectorised block; bounds the (side^2, rows, width) window stack
_BLOCK_ROWS = 256
_SENTINEL = 256  # sorts after every valid intensity


@dataclass(frozen=True)
class FilterParams:
    """Window geometry and isolation-count gate.

    Attributes:
        matrix_size: even integer >= 2; the window side is ``matrix_size + 1``.
        k: the window minimum must occur exactly this many times for the
            median to be applied. ``k=0`` never fires.
    """

    matrix_size: int = 2
    k: int = 1

    def __post_init__(self) -> None:
        _check_matrix_size(self.matrix_size)
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k!r}")

    @property
    def side(self) -> int:
        return self.matrix_size + 1


def _check_matrix_size(matrix_size: int) -> None:
    if (
        isinstance(matrix_size, bool)
        or not isinstance(matrix_size, (int, np.integer))
        or matrix_size < 2
        or matrix_size % 2
    ):
        raise ValueError(f"matrix_size must be an even integer >= 2, got {matrix_size!r}")


@dataclass(frozen=True)
class Window:
    """Intensities of one clipped neighbourhood, in row-major scan order."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("window is empty")

    def __len__(self) -> int:
        return len(self.values)


def _clipped_values(rows: Sequence[Sequence[int]], x: int, y: int, half: int) -> list[int]:
    height, width = len(rows), len(rows[0])
    out = []
    for yy in range(max(0, y - half), min(height, y + half + 1)):
        row = rows[yy]
        for xx in range(max(0, x - half), min(width, x + half + 1)):
            out.append(row[xx])
    return out


def neighborhood(img: GrayImage, x: int, y: int, matrix_size: int = 2) -> Window:
    """Collect the in-bounds intensities around ``(x, y)``, centre included."""
    _check_matrix_size(matrix_size)
    if not (0 <= x < img.width and 0 <= y < img.height):
        raise IndexError(f"pixel ({x}, {y}) outside {img.width}x{img.height} image")
    half = matrix_size // 2
    block = img.pixels[max(0, y - half) : y + half + 1, max(0, x - half) : x + half + 1]
    return Window(tuple(block.ravel().tolist()))


def _as_values(w: Window | Sequence[int]) -> Sequence[int]:
    values = w.values if isinstance(w, Window) else w
    if len(values) == 0:
        raise ValueError("window is empty")
    return values


def median_of(w: Window | Sequence[int]) -> int:
    """Element at index ``n // 2`` of the sorted window (upper median for even n)."""
    values = sorted(_as_values(w))
    return values[len(values) // 2]


def count_min(w: Window | Sequence[int]) -> int:
    """Multiplicity of the smallest intensity in the window."""
    values = list(_as_values(w))
    return values.count(min(values))


def _sorted_windows(arr: np.ndarray, half: int, r0: int, r1: int) -> tuple[np.ndarray, np.ndarray]:
    """Sorted window stacks for output rows ``r0:r1``.

    Returns ``(stack, n)`` where ``stack[:, i, j]`` holds the window of
    pixel ``(j, r0 + i)`` in ascending order with out-of-image slots set to
    the sentinel (so they sort last), and ``n`` is the clipped window length.
    """
    height, width = arr.shape
    side = 2 * half + 1
    lo, hi = max(0, r0 - half), min(height, r1 + half)
    padded = np.full((r1 - r0 + 2 * half, width + 2 * half), _SENTINEL, dtype=np.int16)
    padded[lo - r0 + half : hi - r0 + half, half : half + width] = arr[lo:hi]
    rows = r1 - r0
    stack = np.empty((side * side, rows, width), dtype=np.int16)
    i = 0
    for dy in range(side):
        for dx in range(side):
            stack[i] = padded[dy : dy + rows, dx : dx + width]
            i += 1
    stack.sort(axis=0)
    n = (stack < _SENTINEL).sum(axis=0)
    return stack, n


def _blocks(height: int):
    for r0 in range(0, height, _BLOCK_ROWS):
        yield r0, min(height, r0 + _BLOCK_ROWS)


def median_filter(img: GrayImage, matrix_size: int = 2) -> GrayImage:
    """Replace every pixel by the median of its clipped window in ``img``."""
    _check_matrix_size(matrix_size)
    half = matrix_size // 2
    out = np.empty(img.shape, dtype=np.uint8)
    for r0, r1 in _blocks(img.height):
        stack, n = _sorted_windows(img.pixels, half, r0, r1)
        out[r0:r1] = np.take_along_axis(stack, (n // 2)[None], axis=0)[0]
    return GrayImage(out)


def k_filter(
    img: GrayImage,
    params: FilterParams | None = None,
    mode: FilterMode = "buffered",
) -> GrayImage:
    """Conditional median filter.

    A pixel takes its window median when the window's minimum occurs exactly
    ``params.k`` times; otherwise it keeps its value.

    ``mode="buffered"`` reads every window from the input image, so the
    result does not depend on visiting order. ``mode="paper_literal"`` scans
    columns in the outer loop and rows in the inner loop, writing each
    replacement back immediately so later windows see it. That mode is
    sequential pure Python and intended for fidelity checks on small images.
    """
    params = params or FilterParams()
    if mode == "buffered":
        return _k_filter_buffered(img, params)
    if mode == "paper_literal":
        return _k_filter_in_place(img, params)
    raise ValueError(f"unknown filter mode {mode!r}")


def _k_filter_buffered(img: GrayImage, params: FilterParams) -> GrayImage:
    if params.k == 0:
        return img
    half = params.matrix_size // 2
    out = img.pixels.copy()
    for r0, r1 in _blocks(img.height):
        stack, n = _sorted_windows(img.pixels, half, r0, r1)
        # sentinel slots never equal the minimum, which is always a real value
        mins = (stack == stack[0]).sum(axis=0)
        medians = np.take_along_axis(stack, (n // 2)[None], axis=0)[0]
        fire = mins == params.k
        block = out[r0:r1]
        block[fire] = medians[fire]
    return GrayImage(out)


def _k_filter_in_place(img: GrayImage, params: FilterParams) -> GrayImage:
    rows = img.pixels.tolist()
    half = params.matrix_size // 2
    for x in range(img.width):
        for y in range(img.height):
            values = _clipped_values(rows, x, y, half)
            values.sort()
            if values.count(values[0]) == params.k:
                rows[y][x] = values[len(values) // 2]
    return GrayImage(np.array(rows, dtype=np.uint8))
