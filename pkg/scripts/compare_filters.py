#!/usr/bin/env python3
"""Sweep salt-and-pepper density on synthetic pages and compare the plain median
filter with the conditional (K) filter.

Prints mean PSNR against the clean page and mean ink F1 of the binarized
output for each density. With --out, also writes the PGMs of the first page
at each density for visual inspection.

    python scripts/compare_filters.py --densities 0.01 0.05 0.1 --pages 5
"""

import argparse
from pathlib import Path

import numpy as np

from kalgorithm.binarize import binarize
from kalgorithm.filters import FilterParams, k_filter, median_filter
from kalgorithm.image import BinaryImage, render_binary, save_pgm
from kalgorithm.metrics import binary_confusion, psnr
from kalgorithm.noise import NoiseSpec, add_salt_pepper
from kalgorithm.synth import synthetic_document


def evaluate_page(page_seed, density, size, params, salt_fraction):
    clean = synthetic_document(size, size, seed=page_seed)
    truth = BinaryImage(clean.pixels == 0)
    noisy = add_salt_pepper(clean, NoiseSpec(density, salt_fraction, seed=1000 + page_seed))
    candidates = {
        "noisy": noisy,
        "median": median_filter(noisy, params.matrix_size),
        "kfilter": k_filter(noisy, params),
    }
    scores = {
        name: (psnr(img, clean), binary_confusion(binarize(img), truth).f1)
        for name, img in candidates.items()
    }
    return clean, candidates, scores


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--densities", type=float, nargs="+", default=[0.01, 0.02, 0.05, 0.1, 0.2])
    ap.add_argument("--pages", type=int, default=5)
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--matrix-size", type=int, default=2)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--salt-fraction", type=float, default=0.5)
    ap.add_argument("--out", type=Path, help="directory for example PGMs")
    args = ap.parse_args()

    params = FilterParams(args.matrix_size, args.k)
    names = ("noisy", "median", "kfilter")
    print(f"{'density':>8} " + " ".join(f"{n + ' dB':>11} {n + ' F1':>11}" for n in names))
    for density in args.densities:
        psnrs = {n: [] for n in names}
        f1s = {n: [] for n in names}
        for page in range(args.pages):
            clean, candidates, scores = evaluate_page(
                page, density, args.size, params, args.salt_fraction)
            for n in names:
                psnrs[n].append(scores[n][0])
                f1s[n].append(scores[n][1])
            if args.out and page == 0:
                args.out.mkdir(parents=True, exist_ok=True)
                (args.out / "clean.pgm").write_bytes(save_pgm(clean))
                for n, img in candidates.items():
                    (args.out / f"{n}_{density:g}.pgm").write_bytes(save_pgm(img))
                    (args.out / f"{n}_{density:g}_bin.pgm").write_bytes(
                        save_pgm(render_binary(binarize(img))))
        row = " ".join(f"{np.mean(psnrs[n]):>11.2f} {np.mean(f1s[n]):>11.3f}" for n in names)
        print(f"{density:>8g} {row}")


if __name__ == "__main__":
    main()
