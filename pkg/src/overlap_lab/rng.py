"""Deterministic random-number substreams.

Every random draw in the package flows from a single 64-bit master seed.
Independent components (sampler chains, per-repetition phase draws,
auxiliary oracles) get decorrelated generators through numpy's
``SeedSequence.spawn_key`` mechanism, keyed by a small integer namespace
plus the component index:

    namespace 0: sampler chains            -> substream(seed, 0, chain)
    namespace 1: per-repetition draws      -> substream(seed, 1, rep)
    namespace 2: auxiliary / one-off draws -> substream(seed, 2, k)

Substreams are independent of the order in which they are created, so
running chain 3 before chain 0 yields bit-identical output for both.
"""

from __future__ import annotations

import numpy as np

CHAIN_NAMESPACE = 0
REP_NAMESPACE = 1
AUX_NAMESPACE = 2


def substream(seed: int, namespace: int, index: int) -> np.random.Generator:
    """Return the generator for one (namespace, index) substream of ``seed``."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(namespace, index))
    return np.random.default_rng(ss)


def chain_stream(seed: int, chain: int) -> np.random.Generator:
    """Generator driving sampler chain ``chain``."""
    return substream(seed, CHAIN_NAMESPACE, chain)


def rep_stream(seed: int, rep: int) -> np.random.Generator:
    """Generator for repetition ``rep`` of an experiment (phases, probes)."""
    return substream(seed, REP_NAMESPACE, rep)


def aux_stream(seed: int, k: int = 0) -> np.random.Generator:
    """Generator for auxiliary draws (oracles, pilot runs)."""
    return substream(seed, AUX_NAMESPACE, k)
