"""Seeded salt-and-pepper noise.

The random stream is SplitMix64 evaluated in counter mode, which keeps the
output identical across platforms and library versions:

    z_i = seed + (i + 1) * 0x9E3779B97F4A7C15            (mod 2**64)
    z_i = (z_i ^ (z_i >> 30)) * 0xBF58476D1CE4E5B9      (mod 2**64)
    z_i = (z_i ^ (z_i >> 27)) * 0x94D049BB133111EB      (mod 2**64)
    x_i = z_i ^ (z_i >> 31)
    u_i = (x_i >> 11) / 2**53                            uniform on [0, 1)

This is the same sequence a sequential SplitMix64 generator seeded with
``seed`` produces. Pixel ``p`` (row-major index) consumes ``u_{2p}`` and
``u_{2p+1}``: it is corrupted when ``u_{2p} < density``, and a corrupted
pixel becomes 255 when ``u_{2p+1} < salt_fraction``, else 0. Both draws are
consumed for every pixel whatever the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import GrayImage

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseSpec:
    density: float
    salt_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must lie in [0, 1], got {self.density!r}")
        if not 0.0 <= self.salt_fraction <= 1.0:
            raise ValueError(f"salt_fraction must lie in [0, 1], got {self.salt_fraction!r}")
        if not -(1 << 63) <= int(self.seed) <= _MASK64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed!r}")


def splitmix64(seed: int, n: int, start: int = 0) -> np.ndarray:
    """Outputs ``start .. start + n - 1`` of the SplitMix64 stream for ``seed``."""
    counter = np.arange(start + 1, start + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(int(seed) & _MASK64) + counter * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniforms(seed: int, n: int) -> np.ndarray:
    """``n`` doubles on [0, 1) built from the top 53 bits of each output."""
    return (splitmix64(seed, n) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def noise_masks(shape: tuple[int, int], spec: NoiseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Boolean ``(corrupted, salt)`` masks; ``salt`` is only meaningful where corrupted."""
    height, width = shape
    u = uniforms(spec.seed, 2 * height * width).reshape(height, width, 2)
    return u[..., 0] < spec.density, u[..., 1] < spec.salt_fraction


def add_salt_pepper(img: GrayImage, spec: NoiseSpec) -> GrayImage:
    corrupt, salt = noise_masks(img.shape, spec)
    out = img.pixels.copy()
    out[corrupt & salt] = 255
    out[corrupt & ~salt] = 0
    return GrayImage(out)
