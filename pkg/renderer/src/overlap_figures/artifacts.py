"""Readers for the CSV/JSON files the sampling package emits.

Loading is deliberately strict: required columns must exist, numbers
must parse, and histogram bins must tile an interval without gaps.
Failing before any drawing happens keeps the renderer from producing a
plausible-looking figure out of a truncated or hand-edited file.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Adjacent bins must share an edge to this absolute tolerance; the files
# store full-precision repr floats, so any genuine gap is far larger.
BIN_EDGE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class HistogramTable:
    """Normalized bars plus the closed-form overlay, one row per bin."""

    bin_left: np.ndarray
    bin_right: np.ndarray
    count: np.ndarray
    overlay_density: np.ndarray
    density: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_left + self.bin_right)

    @property
    def widths(self) -> np.ndarray:
        return self.bin_right - self.bin_left


@dataclass(frozen=True)
class SurvivalTable:
    """Empirical P(Y >= delta) next to the exponential bound.

    ``empirical`` (and ``std_error``) are None for bound-only files,
    i.e. tables that tabulate the bound without any samples behind it.
    """

    delta: np.ndarray
    bound: np.ndarray
    empirical: np.ndarray | None = None
    std_error: np.ndarray | None = None


def _read_rows(path: Path) -> tuple[list[str], list[dict]]:
    if not path.exists():
        raise ValueError(f"{path}: no such file")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file, expected a header row")
        header = [name.strip() for name in reader.fieldnames]
        rows = list(reader)
    return header, rows


def _column(path: Path, rows: list[dict], name: str, blank_as_nan: bool = False) -> np.ndarray:
    values = np.empty(len(rows))
    for q, row in enumerate(rows):
        cell = row.get(name)
        if blank_as_nan and (cell is None or cell.strip() == ""):
            values[q] = np.nan
            continue
        try:
            values[q] = float(cell)
        except (TypeError, ValueError) as exc:
            raise ValueError(
                f"{path}: column {name!r} has a non-numeric entry in row {q + 2}"
            ) from exc
    return values


def load_histogram(path) -> HistogramTable:
    """Parse histogram.csv; requires the overlay column and contiguous bins."""
    path = Path(path)
    header, rows = _read_rows(path)
    for name in ("bin_left", "bin_right", "count", "overlay_density"):
        if name not in header:
            raise ValueError(f"{path}: histogram is missing the {name!r} column")
    if not rows:
        raise ValueError(f"{path}: histogram is empty (no bins)")
    left = _column(path, rows, "bin_left")
    right = _column(path, rows, "bin_right")
    count = _column(path, rows, "count")
    overlay = _column(path, rows, "overlay_density")
    if np.any(right <= left):
        raise ValueError(f"{path}: bins must have positive width")
    if len(rows) > 1:
        gap = np.max(np.abs(left[1:] - right[:-1]))
        if gap > BIN_EDGE_TOLERANCE:
            raise ValueError(f"{path}: bins are not contiguous (max edge gap {gap:.3e})")
    total = count.sum()
    if total <= 0:
        raise ValueError(f"{path}: histogram is empty (all counts zero)")
    if "density" in header:
        density = _column(path, rows, "density")
    else:
        # Writer always includes the column; this fallback normalizes by
        # the in-grid total only (out-of-grid counts are not in the file).
        density = count / (total * (right - left))
    return HistogramTable(left, right, count, overlay, density)


def load_survival(path) -> SurvivalTable:
    """Parse survival.csv; empirical/std_error are optional (bound-only runs)."""
    path = Path(path)
    header, rows = _read_rows(path)
    for name in ("delta", "bound"):
        if name not in header:
            raise ValueError(f"{path}: survival table is missing the {name!r} column")
    if not rows:
        raise ValueError(f"{path}: survival table has no rows")
    delta = _column(path, rows, "delta")
    bound = _column(path, rows, "bound")
    empirical = None
    std_error = None
    if "empirical" in header:
        values = _column(path, rows, "empirical", blank_as_nan=True)
        if np.any(np.isfinite(values)):
            empirical = values
    if empirical is not None and "std_error" in header:
        std_error = _column(path, rows, "std_error", blank_as_nan=True)
    return SurvivalTable(delta, bound, empirical, std_error)


def load_summary(path) -> dict:
    """Parse summary.json into a plain dict used for titles and labels."""
    path = Path(path)
    if not path.exists():
        raise ValueError(f"{path}: no such file")
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data
