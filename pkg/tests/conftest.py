"""Shared fixtures: the expensive ensembles are drawn once per session."""

from __future__ import annotations

import numpy as np
import pytest

from overlap_lab import (
    ChainConfig,
    collect_general,
    collect_ginibre,
    ginibre_potential,
    quartic_quintic_potential,
)


def random_triangular(n: int, rng: np.random.Generator, min_gap: float = 0.0):
    """Random model with O(1) entries; optionally resample the diagonal
    until all eigenvalue gaps clear min_gap (for conditioning-sensitive
    oracles)."""
    from overlap_lab import TriangularModel

    m = n * (n + 1) // 2
    while True:
        g = rng.standard_normal((2, m))
        t = TriangularModel(n, g[0] + 1j * g[1])
        d = t.diag()
        if n == 1:
            return t
        gaps = np.abs(d[:, None] - d[None, :])[np.triu_indices(n, k=1)]
        if gaps.min() >= min_gap:
            return t


@pytest.fixture(scope="session")
def ginibre_150():
    """40 Gaussian-ensemble samples at n = 150: shared by the Figure-1,
    radial-law, and disk-count acceptance runs."""
    cfg = ChainConfig.for_emissions(40, burn_in=2000, thinning=500, seed=1150)
    return collect_ginibre(150, cfg)


@pytest.fixture(scope="session")
def quartic_150():
    """40 quartic-quintic samples at n = 150 (the slow MALA ensemble)."""
    cfg = ChainConfig.for_emissions(40, burn_in=4000, thinning=400, seed=2150)
    return collect_general(150, quartic_quintic_potential(), cfg)


@pytest.fixture(scope="session")
def ginibre_50_probe():
    """3000 Gaussian-ensemble samples at n = 50 for the Exp(1) law."""
    cfg = ChainConfig.for_emissions(3000, burn_in=2000, thinning=100, seed=1050)
    return collect_ginibre(50, cfg)


@pytest.fixture(scope="session")
def ginibre_20():
    """800 Gaussian-ensemble samples at n = 20 (tail + cross-sampler)."""
    cfg = ChainConfig.for_emissions(800, burn_in=2500, thinning=150, seed=1020)
    return collect_ginibre(20, cfg)


@pytest.fixture(scope="session")
def general_ginibre_20():
    """800 samples at n = 20 from the full-matrix walk with V(x) = x:
    same law as ginibre_20, different sampler."""
    cfg = ChainConfig.for_emissions(800, burn_in=2500, thinning=150, seed=3020)
    return collect_general(20, ginibre_potential(), cfg)


@pytest.fixture(scope="session")
def quartic_20():
    """800 quartic-quintic samples at n = 20 for the tail bound."""
    cfg = ChainConfig.for_emissions(800, burn_in=2500, thinning=150, seed=2020)
    return collect_general(20, quartic_quintic_potential(), cfg)


@pytest.fixture(scope="session")
def ginibre_150_array():
    """400 Gaussian-ensemble samples at n = 150 for the overlap array."""
    cfg = ChainConfig.for_emissions(400, burn_in=2000, thinning=100, seed=4150)
    return collect_ginibre(150, cfg)
