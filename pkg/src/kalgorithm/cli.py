"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid parameters.
Outputs are written to a temporary file and renamed into place, so a
failed run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import report
from .binarize import binarize
from .filters import FilterParams, k_filter, median_filter
from .image import BinaryImage, GrayImage, PGMError, decode_binary, load_pgm, render_binary, save_pgm
from .metrics import quality_report
from .noise import NoiseSpec, add_salt_pepper

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARAM = 2


class ParamError(ValueError):
    """Invalid command-line parameter value."""


class InputError(Exception):
    """An input file that exists and parses but cannot be used."""


def atomic_write(path: str | os.PathLike, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def read_image(path: str) -> GrayImage:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        return load_pgm(data)
    except PGMError as exc:
        raise PGMError(f"{path}: {exc}") from None


def _filter_params(args) -> FilterParams:
    try:
        return FilterParams(args.matrix_size, args.k)
    except ValueError as exc:
        raise ParamError(str(exc)) from None


def _noise_spec(args) -> NoiseSpec:
    try:
        return NoiseSpec(args.density, args.salt_fraction, args.seed)
    except ValueError as exc:
        raise ParamError(str(exc)) from None


def _mode(args) -> str:
    return args.mode.replace("-", "_")


def _write_image(args, img: GrayImage) -> None:
    atomic_write(args.output, save_pgm(img, args.pgm_format))


def _maybe_report(args, record_for: Callable[[Optional[object]], report.RunRecord],
                  output: GrayImage, bits: Optional[BinaryImage] = None) -> None:
    """Write a single-record report when ``--report`` was given."""
    if not args.report:
        return
    metrics = None
    if args.reference:
        ref = read_image(args.reference)
        _same_dims(ref, output, args.reference)
        truth = pred = None
        if args.truth:
            truth = decode_binary(read_image(args.truth))
            _same_dims(truth, output, args.truth)
            pred = bits if bits is not None else binarize(output)
        metrics = quality_report(output, ref, pred, truth)
    record = record_for(metrics)
    atomic_write(args.report, report.dumps([record], args.format).encode("utf-8"))


def _same_dims(img, like, path: str) -> None:
    if img.shape != like.shape:
        raise InputError(
            f"{path}: dimensions {img.width}x{img.height} do not match "
            f"{like.width}x{like.height}"
        )


def cmd_denoise(args) -> int:
    params = _filter_params(args)
    img = read_image(args.input)
    out = k_filter(img, params, mode=_mode(args))
    _write_image(args, out)
    _maybe_report(args, lambda m: report.RunRecord(
        args.input, "kfilter", params, _mode(args), None, m, args.output), out)
    return EXIT_OK


def cmd_median(args) -> int:
    params = _filter_params(args)
    img = read_image(args.input)
    out = median_filter(img, params.matrix_size)
    _write_image(args, out)
    _maybe_report(args, lambda m: report.RunRecord(
        args.input, "median", params, None, None, m, args.output), out)
    return EXIT_OK


def cmd_binarize(args) -> int:
    img = read_image(args.input)
    bits = binarize(img)
    out = render_binary(bits)
    _write_image(args, out)
    _maybe_report(args, lambda m: report.RunRecord(
        args.input, "binarize", None, None, None, m, args.output), out, bits)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    params = _filter_params(args)
    img = read_image(args.input)
    bits = binarize(k_filter(img, params, mode=_mode(args)))
    out = render_binary(bits)
    _write_image(args, out)
    _maybe_report(args, lambda m: report.RunRecord(
        args.input, "pipeline", params, _mode(args), None, m, args.output), out, bits)
    return EXIT_OK


def cmd_noise(args) -> int:
    spec = _noise_spec(args)
    img = read_image(args.input)
    _write_image(args, add_salt_pepper(img, spec))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    clean = read_image(args.clean)
    truth = None
    if args.truth:
        truth = decode_binary(read_image(args.truth))
        _same_dims(truth, clean, args.truth)
    records = []
    for path in args.candidates:
        cand = read_image(path)
        _same_dims(cand, clean, path)
        pred = binarize(cand) if truth is not None else None
        records.append(report.RunRecord(
            input_path=path, metrics=quality_report(cand, clean, pred, truth)))
    text = report.dumps(records, args.format)
    if args.report:
        atomic_write(args.report, text.encode("utf-8"))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_filter_flags(p: argparse.ArgumentParser, with_mode: bool = True) -> None:
    p.add_argument("--matrix-size", type=int, default=2,
                   help="even window parameter; the window side is matrix-size + 1 (default 2)")
    if with_mode:
        p.add_argument("--k", type=int, default=1, help="isolation-count gate (default 1)")
        p.add_argument("--mode", choices=("buffered", "paper-literal"), default="buffered")


def _add_io(p: argparse.ArgumentParser, with_report: bool = True) -> None:
    p.add_argument("input", help="input PGM")
    p.add_argument("output", help="output PGM")
    p.add_argument("--pgm-format", choices=("binary", "ascii"), default="binary",
                   help="P5 (binary, default) or P2 (ascii) output")
    if with_report:
        p.add_argument("--report", help="write a one-record run report here")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--reference", help="clean PGM to score the output against")
        p.add_argument("--truth", help="ground-truth binary PGM (0 = ink, 255 = paper)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kalgorithm",
        description="Conditional median filtering and mean-threshold binarization of PGM scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise", help="conditional (K) median filter")
    _add_io(p)
    _add_filter_flags(p)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("median", help="plain median filter")
    _add_io(p)
    _add_filter_flags(p, with_mode=False)
    p.set_defaults(func=cmd_median, k=1)

    p = sub.add_parser("binarize", help="global mean-threshold binarization")
    _add_io(p)
    p.set_defaults(func=cmd_binarize)

    p = sub.add_parser("pipeline", help="K filter followed by binarization")
    _add_io(p)
    _add_filter_flags(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("noise", help="add seeded salt-and-pepper noise")
    _add_io(p, with_report=False)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--salt-fraction", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("evaluate", help="score candidate images against a clean reference")
    p.add_argument("clean", help="clean reference PGM")
    p.add_argument("candidates", nargs="+", help="candidate PGMs")
    p.add_argument("--truth", help="ground-truth binary PGM (0 = ink, 255 = paper)")
    p.add_argument("--report", help="report path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"kalgorithm: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (OSError, PGMError, InputError) as exc:
        print(f"kalgorithm: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
