"""Grayscale/binary image containers and PGM (P2/P5) I/O.

Coordinates follow ``(x, y)`` = (column, row) with the origin at the top-left.
Intensities are 8-bit: 0 is the darkest value, 255 the brightest. Binary
images use the white=0 / black=1 encoding, so ink is the "on" bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

WHITE = 0
BLACK = 1

PgmFormat = Literal["ascii", "binary"]


class PGMError(ValueError):
    """Raised when a byte stream is not a valid 8-bit PGM image."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.uint8, copy=True, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit grayscale raster stored as a ``(height, width)`` array."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"intensities must be integers, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("intensities must lie in [0, 255]")
        object.__setattr__(self, "pixels", _frozen(arr))

    @classmethod
    def from_values(cls, width: int, height: int, values: Iterable[int]) -> "GrayImage":
        """Build an image from a flat row-major sequence of intensities."""
        flat = np.fromiter((int(v) for v in values), dtype=np.int64)
        if flat.size != width * height:
            raise ValueError(f"expected {width * height} values, got {flat.size}")
        return cls(flat.reshape(height, width))

    @classmethod
    def filled(cls, width: int, height: int, value: int = 255) -> "GrayImage":
        return cls(np.full((height, width), value, dtype=np.int64))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def values(self) -> list[int]:
        """Row-major list of intensities."""
        return self.pixels.ravel().tolist()

    def __getitem__(self, xy: tuple[int, int]) -> int:
        return get_pixel(self, *xy)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Immutable bilevel raster; bit 0 is white/background, bit 1 is black/ink."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.bits)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {arr.shape}")
        if arr.dtype == np.bool_:
            arr = arr.astype(np.uint8)
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("binary image values must be 0 or 1")
        object.__setattr__(self, "bits", _frozen(arr))

    @classmethod
    def from_values(cls, width: int, height: int, values: Iterable[int]) -> "BinaryImage":
        flat = np.fromiter((int(v) for v in values), dtype=np.int64)
        if flat.size != width * height:
            raise ValueError(f"expected {width * height} values, got {flat.size}")
        return cls(flat.reshape(height, width))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    def values(self) -> list[int]:
        return self.bits.ravel().tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"BinaryImage({self.width}x{self.height}, ink={int(self.bits.sum())})"


def get_pixel(img: GrayImage, x: int, y: int) -> int:
    """Return the intensity at column ``x``, row ``y``.

    Raises:
        IndexError: if the coordinates fall outside the image. Negative
            indices are rejected rather than wrapped.
    """
    if not (0 <= x < img.width and 0 <= y < img.height):
        raise IndexError(f"pixel ({x}, {y}) outside {img.width}x{img.height} image")
    return int(img.pixels[y, x])


def render_binary(b: BinaryImage) -> GrayImage:
    """Map white bits to 255 and ink bits to 0."""
    return GrayImage(np.where(b.bits == BLACK, 0, 255))


def decode_binary(img: GrayImage) -> BinaryImage:
    """Inverse of :func:`render_binary` for images holding only 0 and 255.

    Raises:
        PGMError: if any intensity other than 0 or 255 is present.
    """
    px = img.pixels
    if not np.isin(px, (0, 255)).all():
        raise PGMError("binary image must contain only intensities 0 and 255")
    return BinaryImage(px == 0)


# --- PGM ---------------------------------------------------------------------

_WHITESPACE = b" \t\n\r\v\f"


class _Tokenizer:
    """Pulls whitespace-separated ASCII tokens, skipping ``#`` comments."""

    def __init__(self, data: bytes, pos: int) -> None:
        self.data = data
        self.pos = pos

    def next(self, what: str) -> tuple[bytes, int]:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == ord("#"):
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                break
        if self.pos >= n:
            raise PGMError(f"truncated stream: expected {what} at byte offset {self.pos}")
        start = self.pos
        while self.pos < n and data[self.pos] not in _WHITESPACE and data[self.pos] != ord("#"):
            self.pos += 1
        return data[start : self.pos], start

    def next_int(self, what: str) -> tuple[int, int]:
        tok, offset = self.next(what)
        if not tok.isdigit():
            raise PGMError(f"invalid {what} token {tok!r} at byte offset {offset}")
        return int(tok), offset


def _rescale(samples: np.ndarray, maxval: int) -> np.ndarray:
    if maxval == 255:
        return samples
    # round(s * 255 / maxval), halves rounded up, in exact integer arithmetic
    s = samples.astype(np.int64)
    return (2 * s * 255 + maxval) // (2 * maxval)


def load_pgm(data: bytes) -> GrayImage:
    """Parse a P2 (ASCII) or P5 (binary) PGM byte stream.

    Samples are rescaled to the 0..255 range when the header's maxval is
    not 255. Bytes following the raster are ignored.

    Raises:
        PGMError: on a bad magic number, malformed or out-of-range header
            fields, truncated pixel data, or a sample exceeding maxval.
    """
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMError(f"unknown magic number {magic!r} at byte offset 0")
    tok = _Tokenizer(data, 2)
    if tok.pos < len(data) and data[tok.pos] not in _WHITESPACE and data[tok.pos] != ord("#"):
        raise PGMError(f"unknown magic number {data[:3]!r} at byte offset 0")

    width, off = tok.next_int("width")
    if width < 1:
        raise PGMError(f"width must be positive, got {width} at byte offset {off}")
    height, off = tok.next_int("height")
    if height < 1:
        raise PGMError(f"height must be positive, got {height} at byte offset {off}")
    maxval, off = tok.next_int("maxval")
    if not 1 <= maxval <= 255:
        raise PGMError(f"maxval {maxval} at byte offset {off} outside [1, 255]")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        start = tok.pos + 1
        raw = data[start : start + count]
        if len(raw) < count:
            raise PGMError(
                f"truncated pixel data: expected {count} bytes from offset {start}, "
                f"got {len(raw)}"
            )
        samples = np.frombuffer(raw, dtype=np.uint8)
        over = np.flatnonzero(samples > maxval)
        if over.size:
            i = int(over[0])
            raise PGMError(
                f"sample {samples[i]} at byte offset {start + i} exceeds maxval {maxval}"
            )
    else:
        samples = _fast_ascii_samples(data[tok.pos :], count, maxval)
        if samples is None:
            samples = _ascii_samples(tok, count, maxval)

    return GrayImage(_rescale(samples, maxval).reshape(height, width))


def _fast_ascii_samples(body: bytes, count: int, maxval: int) -> np.ndarray | None:
    # common case: no comments, all tokens valid; anything else goes to the
    # slow path, which reports byte offsets
    if b"#" in body:
        return None
    tokens = body.split(maxsplit=count)[:count]
    if len(tokens) < count or not all(t.isdigit() for t in tokens):
        return None
    samples = np.array([int(t) for t in tokens], dtype=np.int64)
    if samples.size and samples.max() > maxval:
        return None
    return samples


def _ascii_samples(tok: _Tokenizer, count: int, maxval: int) -> np.ndarray:
    values = []
    data = tok.data
    for i in range(count):
        try:
            v, off = tok.next_int(f"sample {i}")
        except PGMError as exc:
            if tok.pos >= len(data):
                raise PGMError(
                    f"truncated pixel data: got {i} of {count} samples "
                    f"(stream ends at byte offset {len(data)})"
                ) from exc
            raise
        if v > maxval:
            raise PGMError(f"sample {v} at byte offset {off} exceeds maxval {maxval}")
        values.append(v)
    return np.array(values, dtype=np.int64)


def save_pgm(img: GrayImage, format: PgmFormat = "binary") -> bytes:
    """Serialize to canonical PGM.

    The header is always ``magic\\nW H\\n255\\n``. ASCII output writes one
    image row per line with single spaces between samples.
    """
    header = f"{img.width} {img.height}\n255\n".encode("ascii")
    if format == "binary":
        return b"P5\n" + header + img.pixels.tobytes()
    if format == "ascii":
        rows = "\n".join(" ".join(map(str, row)) for row in img.pixels.tolist())
        return b"P2\n" + header + rows.encode("ascii") + b"\n"
    raise ValueError(f"unknown PGM format {format!r}")


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return load_pgm(fh.read())
