"""Draw triangular-model samples from both samplers and look at the spectra.

The Gaussian ensemble (V(x) = x) factorizes: the diagonal is a 2D
Coulomb log-gas, sampled with MALA, and the strict upper triangle is
iid complex Gaussian of variance 1/n, redrawn fresh for every emission.
A general potential couples everything, so the whole packed triangle
runs through one MALA chain.
"""

import numpy as np

from overlap_lab import (
    ChainConfig,
    collect_general,
    collect_ginibre,
    quartic_quintic_potential,
)

n = 20
cfg = ChainConfig.for_emissions(200, burn_in=1500, thinning=50, seed=1)

print(f"Gaussian ensemble, n = {n}")
batch = collect_ginibre(n, cfg)
diag = np.concatenate([t.diag() for t in batch.samples])
d = batch.chains[0]
print(f"  {len(batch.samples)} samples; tuned step {d.tuned_step_size:.4f}, "
      f"acceptance {d.sampling_acceptance:.3f}")
print(f"  mean |lambda| = {np.mean(np.abs(diag)):.4f} "
      f"(circular law gives 2/3 ~ 0.667)")
print(f"  mean sum |lambda|^2 per matrix = {np.mean(np.abs(diag) ** 2) * n:.3f} "
      f"(exact value (n + 1) / 2 = {(n + 1) / 2})")

print(f"\nquartic-quintic ensemble, n = {n}")
batch = collect_general(n, quartic_quintic_potential(), cfg)
diag = np.concatenate([t.diag() for t in batch.samples])
d = batch.chains[0]
print(f"  {len(batch.samples)} samples; tuned step {d.tuned_step_size:.5f}, "
      f"acceptance {d.sampling_acceptance:.3f}")
print(f"  mean |lambda| = {np.mean(np.abs(diag)):.4f} "
      f"(the heavier potential confines the spectrum)")
print(f"  max |lambda| = {np.max(np.abs(diag)):.4f}")
