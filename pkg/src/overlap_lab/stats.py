"""Small statistical utilities: Kolmogorov-Smirnov distances and thresholds.

The one-sample distance is the classical two-sided statistic

    D = max_i max( i/n - F(x_(i)),  F(x_(i)) - (i-1)/n ),

and null thresholds come from the asymptotic tail P(D > c/sqrt(n)) ~
2 exp(-2 c^2), inverted at the requested confidence.  A "3 sigma"
decision corresponds to confidence 0.9973.
"""

from __future__ import annotations

import numpy as np

THREE_SIGMA_CONFIDENCE = 0.9973002039367398


def ks_distance(values, cdf) -> float:
    """Two-sided one-sample KS distance between a sample and a CDF callable."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = len(x)
    if n == 0:
        raise ValueError("empty sample")
    f = np.asarray(cdf(x), dtype=np.float64)
    up = np.arange(1, n + 1) / n - f
    down = f - np.arange(0, n) / n
    return float(max(np.max(up), np.max(down)))


def ks_two_sample(a, b) -> float:
    """Two-sided two-sample KS distance."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if len(a) == 0 or len(b) == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


def ks_critical(n: int, confidence: float = THREE_SIGMA_CONFIDENCE) -> float:
    """One-sample null quantile: D below this with the given probability."""
    c = np.sqrt(-0.5 * np.log((1.0 - confidence) / 2.0))
    return float(c / np.sqrt(n))


def ks_two_sample_critical(
    n: int, m: int, confidence: float = THREE_SIGMA_CONFIDENCE
) -> float:
    """Two-sample null quantile at the given confidence."""
    c = np.sqrt(-0.5 * np.log((1.0 - confidence) / 2.0))
    return float(c * np.sqrt((n + m) / (n * m)))


def exp1_cdf(x):
    """CDF of the unit exponential law."""
    return -np.expm1(-np.asarray(x, dtype=np.float64))


def mean_z_score(a, b) -> float:
    """|mean(a) - mean(b)| over the combined standard error of the difference."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    se2 = np.var(a, ddof=1) / len(a) + np.var(b, ddof=1) / len(b)
    return float(abs(np.mean(a) - np.mean(b)) / np.sqrt(se2))
