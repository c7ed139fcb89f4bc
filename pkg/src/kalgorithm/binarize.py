"""Global mean-threshold binarization and the two-step K-Algorithm pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .filters import FilterParams, k_filter
from .image import BinaryImage, GrayImage


@dataclass(frozen=True)
class Threshold:
    """Mean intensity held as an exact ``total / count`` pair."""

    total: int
    count: int

    @property
    def value(self) -> float:
        return self.total / self.count

    def as_fraction(self) -> Fraction:
        return Fraction(self.total, self.count)


def mean_intensity(img: GrayImage) -> Threshold:
    return Threshold(int(img.pixels.sum(dtype=np.int64)), img.width * img.height)


def binarize(img: GrayImage) -> BinaryImage:
    """Pixels at or above the mean become white (0), the rest ink (1).

    The comparison ``v >= total / count`` is done as ``v * count >= total``
    so no rounding of the threshold can move pixels across it.
    """
    t = mean_intensity(img)
    scaled = img.pixels.astype(np.int64) * t.count
    return BinaryImage(scaled < t.total)


def k_algorithm(img: GrayImage, params: FilterParams | None = None) -> BinaryImage:
    """Conditional median filtering (buffered) followed by :func:`binarize`."""
    return binarize(k_filter(img, params, mode="buffered"))
