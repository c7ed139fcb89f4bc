"""Fidelity and ink-detection metrics for comparing preprocessing outputs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .image import BinaryImage, GrayImage

INFINITE = math.inf
PEAK = 255


def _check_dims(a, b) -> None:
    if a.shape != b.shape:
        raise ValueError(
            f"dimension mismatch: {a.shape[1]}x{a.shape[0]} vs {b.shape[1]}x{b.shape[0]}"
        )


def squared_error_sum(a: GrayImage, b: GrayImage) -> int:
    _check_dims(a, b)
    d = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int((d * d).sum())


def mse(a: GrayImage, b: GrayImage) -> float:
    return squared_error_sum(a, b) / (a.width * a.height)


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return INFINITE
    return 10.0 * math.log10(PEAK * PEAK / value)


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB (peak 255); ``math.inf`` for identical images."""
    return psnr_from_mse(mse(a, b))


def changed_pixels(a: GrayImage | BinaryImage, b: GrayImage | BinaryImage) -> int:
    _check_dims(a, b)
    pa = a.pixels if isinstance(a, GrayImage) else a.bits
    pb = b.pixels if isinstance(b, GrayImage) else b.bits
    return int((pa != pb).sum())


@dataclass(frozen=True)
class Confusion:
    """Pixel counts with ink (bit 1) as the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def precision(self) -> float:
        d = self.tp + self.fp
        return self.tp / d if d else 0.0

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return self.tp / d if d else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def binary_confusion(pred: BinaryImage, truth: BinaryImage) -> Confusion:
    _check_dims(pred, truth)
    p = pred.bits.astype(bool)
    t = truth.bits.astype(bool)
    return Confusion(
        tp=int((p & t).sum()),
        fp=int((p & ~t).sum()),
        fn=int((~p & t).sum()),
        tn=int((~p & ~t).sum()),
    )


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    changed_pixels: int
    confusion: Optional[Confusion] = None


def quality_report(
    candidate: GrayImage,
    reference: GrayImage,
    pred: BinaryImage | None = None,
    truth: BinaryImage | None = None,
) -> QualityReport:
    """MSE/PSNR/changed-pixel comparison, plus confusion when both binaries are given."""
    m = mse(candidate, reference)
    conf = binary_confusion(pred, truth) if pred is not None and truth is not None else None
    return QualityReport(
        mse=m,
        psnr=psnr_from_mse(m),
        changed_pixels=changed_pixels(candidate, reference),
        confusion=conf,
    )
