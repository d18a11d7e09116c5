"""Matplotlib rendering of the two artifact figures.

Histogram: normalized blue bars of the sqrt(Y) statistic with the
overlay density drawn in red through the bin centers.  Survival:
empirical P(Y >= delta) and the exponential bound on a log scale.
Images are written with fixed metadata and no timestamps, so rendering
the same inputs twice reproduces the file byte for byte.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .artifacts import load_histogram, load_summary, load_survival

_DPI = 150
_FIGSIZE = (6.4, 4.2)


@dataclass(frozen=True)
class PlotSpec:
    """Input artifact paths, the output image path, and label overrides."""

    output: Path | str
    histogram: Path | str | None = None
    survival: Path | str | None = None
    summary: Path | str | None = None
    title: str | None = None
    label: str | None = None


def _metadata_for(path: Path) -> dict | None:
    # Nothing time-dependent may enter the file, or idempotent
    # re-rendering breaks; PNG gets a fixed Software tag, SVG/PDF have
    # their date fields suppressed.
    suffix = path.suffix.lower()
    if suffix == ".png":
        return {"Software": "overlap-figures"}
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".pdf":
        return {"CreationDate": None}
    return None


def _save(fig, output: Path | str) -> Path:
    output = Path(output)
    try:
        fig.savefig(output, dpi=_DPI, metadata=_metadata_for(output))
    finally:
        plt.close(fig)
    return output


def _histogram_title(summary: dict) -> str:
    bits = []
    if "n" in summary:
        bits.append(f"n = {summary['n']}")
    if "n_samples" in summary:
        bits.append(f"{summary['n_samples']} samples")
    if "n_pairs" in summary:
        bits.append(f"{summary['n_pairs']} eigenvalue pairs")
    return ", ".join(bits) or "rescaled overlap statistic"


def _survival_title(summary: dict) -> str:
    bits = []
    if "n" in summary:
        bits.append(f"n = {summary['n']}")
    if "n_samples" in summary:
        bits.append(f"{summary['n_samples']} samples")
    return ", ".join(bits) or "overlap tail"


def _bound_label(summary: dict) -> str:
    alpha = summary.get("alpha")
    if alpha is None:
        return "bound 2 exp(-(alpha/2) delta)"
    return f"bound 2 exp(-{0.5 * float(alpha):g} delta)"


def render_histogram(spec: PlotSpec) -> Path:
    """Draw bars + overlay curve from spec.histogram; returns the image path.

    All validation happens before any drawing, so a bad file never
    leaves a partial image behind.
    """
    if spec.histogram is None:
        raise ValueError("PlotSpec has no histogram input")
    table = load_histogram(spec.histogram)
    summary = load_summary(spec.summary) if spec.summary else {}
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.bar(
        table.centers,
        table.density,
        width=table.widths,
        color="#6baed6",
        edgecolor="white",
        linewidth=0.4,
        label=spec.label or "samples",
    )
    ax.plot(
        table.centers,
        table.overlay_density,
        color="tab:red",
        linewidth=2.0,
        label="2x exp(-x^2)",
    )
    ax.set_xlim(table.bin_left[0], table.bin_right[-1])
    ax.set_ylim(bottom=0.0)
    ax.set_xlabel("x = sqrt(Y)")
    ax.set_ylabel("density")
    ax.set_title(spec.title or _histogram_title(summary))
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, spec.output)


def render_survival(spec: PlotSpec) -> Path:
    """Draw empirical survival vs the bound on a log scale; returns the path.

    A bound-only table (no empirical column, or all entries blank)
    renders the bound alone and raises a UserWarning.
    """
    if spec.survival is None:
        raise ValueError("PlotSpec has no survival input")
    table = load_survival(spec.survival)
    summary = load_summary(spec.summary) if spec.summary else {}
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    if table.empirical is None:
        warnings.warn(f"{spec.survival}: no empirical values, rendering the bound alone")
    else:
        shown = np.isfinite(table.empirical) & (table.empirical > 0)
        ax.plot(
            table.delta[shown],
            table.empirical[shown],
            marker="o",
            markersize=3.5,
            linewidth=1.2,
            color="tab:blue",
            label=spec.label or "empirical P(Y >= delta)",
        )
    ax.plot(table.delta, table.bound, color="tab:red", linewidth=2.0, label=_bound_label(summary))
    ax.set_yscale("log")
    ax.set_xlabel("delta")
    ax.set_ylabel("P(Y >= delta)")
    ax.set_title(spec.title or _survival_title(summary))
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, spec.output)
