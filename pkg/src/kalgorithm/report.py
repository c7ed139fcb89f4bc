"""Run records and their CSV/JSON serialization.

Both formats use the same flat column set in the same order. Missing values
are empty strings in CSV and ``null`` in JSON; an infinite PSNR is written as
the string ``"inf"`` in both.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .filters import FilterParams
from .metrics import Confusion, QualityReport
from .noise import NoiseSpec

METHODS = ("median", "kfilter", "binarize", "pipeline")

COLUMNS: tuple[tuple[str, type], ...] = (
    ("input_path", str),
    ("method", str),
    ("matrix_size", int),
    ("k", int),
    ("mode", str),
    ("density", float),
    ("salt_fraction", float),
    ("seed", int),
    ("mse", float),
    ("psnr", float),
    ("changed_pixels", int),
    ("tp", int),
    ("fp", int),
    ("fn", int),
    ("tn", int),
    ("precision", float),
    ("recall", float),
    ("f1", float),
    ("output_path", str),
)
COLUMN_NAMES = tuple(name for name, _ in COLUMNS)


@dataclass(frozen=True)
class RunRecord:
    input_path: str
    method: Optional[str] = None
    params: Optional[FilterParams] = None
    mode: Optional[str] = None
    noise: Optional[NoiseSpec] = None
    metrics: Optional[QualityReport] = None
    output_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.method is not None and self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    def to_row(self) -> dict[str, Any]:
        p, n, m = self.params, self.noise, self.metrics
        c = m.confusion if m is not None else None
        row = {
            "input_path": self.input_path,
            "method": self.method,
            "matrix_size": p.matrix_size if p else None,
            # the plain median filter has no gate
            "k": p.k if p and self.method != "median" else None,
            "mode": self.mode,
            "density": n.density if n else None,
            "salt_fraction": n.salt_fraction if n else None,
            "seed": n.seed if n else None,
            "mse": m.mse if m else None,
            "psnr": m.psnr if m else None,
            "changed_pixels": m.changed_pixels if m else None,
            "tp": c.tp if c else None,
            "fp": c.fp if c else None,
            "fn": c.fn if c else None,
            "tn": c.tn if c else None,
            "precision": c.precision if c else None,
            "recall": c.recall if c else None,
            "f1": c.f1 if c else None,
            "output_path": self.output_path,
        }
        return row

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "RunRecord":
        params = None
        if row["matrix_size"] is not None:
            k = row["k"] if row["k"] is not None else FilterParams.k
            params = FilterParams(row["matrix_size"], k)
        noise = None
        if row["density"] is not None:
            noise = NoiseSpec(row["density"], row["salt_fraction"], row["seed"])
        metrics = None
        if row["mse"] is not None:
            conf = None
            if row["tp"] is not None:
                conf = Confusion(row["tp"], row["fp"], row["fn"], row["tn"])
            metrics = QualityReport(row["mse"], row["psnr"], row["changed_pixels"], conf)
        return cls(
            input_path=row["input_path"],
            method=row["method"],
            params=params,
            mode=row["mode"],
            noise=noise,
            metrics=metrics,
            output_path=row["output_path"],
        )


def _encode(value: Any) -> Any:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _decode(value: Any, kind: type) -> Any:
    if value is None or (value == "" and kind is not str):
        return None
    if kind is float:
        return math.inf if value == "inf" else float(value)
    if kind is int:
        return int(value)
    return value


def to_json(records: Sequence[RunRecord]) -> str:
    rows = [{k: _encode(v) for k, v in r.to_row().items()} for r in records]
    return json.dumps(rows, indent=2) + "\n"


def from_json(text: str) -> list[RunRecord]:
    rows = json.loads(text)
    return [
        RunRecord.from_row({name: _decode(row.get(name), kind) for name, kind in COLUMNS})
        for row in rows
    ]


def to_csv(records: Sequence[RunRecord]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\r\n")  # RFC 4180
    writer.writerow(COLUMN_NAMES)
    for r in records:
        cells = []
        for v in r.to_row().values():
            v = _encode(v)
            cells.append("" if v is None else repr(v) if isinstance(v, float) else str(v))
        writer.writerow(cells)
    return buf.getvalue()


def from_csv(text: str) -> list[RunRecord]:
    reader = csv.DictReader(io.StringIO(text, newline=""))
    if tuple(reader.fieldnames or ()) != COLUMN_NAMES:
        raise ValueError("unexpected CSV header")
    out = []
    for row in reader:
        values = {}
        for name, kind in COLUMNS:
            cell = row[name]
            # CSV cannot tell an empty string from a missing one
            values[name] = None if cell == "" else _decode(cell, kind)
        out.append(RunRecord.from_row(values))
    return out


def dumps(records: Sequence[RunRecord], format: str) -> str:
    if format == "json":
        return to_json(records)
    if format == "csv":
        return to_csv(records)
    raise ValueError(f"unknown report format {format!r}")


def loads(text: str, format: str) -> list[RunRecord]:
    if format == "json":
        return from_json(text)
    if format == "csv":
        return from_csv(text)
    raise ValueError(f"unknown report format {format!r}")
