"""Conditional median filtering and mean-threshold binarization for scanned documents."""

from .binarize import Threshold, binarize, k_algorithm, mean_intensity
from .filters import FilterParams, Window, count_min, k_filter, median_filter, median_of, neighborhood
from .image import (
    BLACK,
    WHITE,
    BinaryImage,
    GrayImage,
    PGMError,
    get_pixel,
    load_pgm,
    render_binary,
    save_pgm,
)
from .metrics import INFINITE, Confusion, QualityReport, binary_confusion, changed_pixels, mse, psnr
from .noise import NoiseSpec, add_salt_pepper

__all__ = [
    "BLACK", "WHITE", "BinaryImage", "GrayImage", "PGMError", "get_pixel", "load_pgm",
    "render_binary", "save_pgm",
    "FilterParams", "Window", "count_min", "k_filter", "median_filter", "median_of",
    "neighborhood",
    "Threshold", "binarize", "k_algorithm", "mean_intensity",
    "NoiseSpec", "add_salt_pepper",
    "INFINITE", "Confusion", "QualityReport", "binary_confusion", "changed_pixels", "mse", "psnr",
]
