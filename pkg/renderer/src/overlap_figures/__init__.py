"""Plotting front end for overlap-lab artifacts.

Draws two figures from files the sampling library writes: the sqrt(Y)
histogram with its closed-form overlay, and the empirical survival of Y
against the exponential bound.  Every number is read from
histogram.csv / survival.csv / summary.json as-is; nothing statistical
is recomputed here, so the plots cannot drift from what the producing
run asserted.
"""

from .artifacts import (
    HistogramTable,
    SurvivalTable,
    load_histogram,
    load_summary,
    load_survival,
)
from .plots import PlotSpec, render_histogram, render_survival

__all__ = [
    "HistogramTable",
    "PlotSpec",
    "SurvivalTable",
    "load_histogram",
    "load_summary",
    "load_survival",
    "render_histogram",
    "render_survival",
]
