"""The exact cross-checks: Jacobian, normalization recursion, radial law,
and the n = 2 rejection oracle.

These are the structural facts the Monte Carlo experiments lean on; all
of them have closed forms, so the tolerances are tight.
"""

import numpy as np

from overlap_lab import (
    ChainConfig,
    TriangularModel,
    collect_ginibre,
    ginibre_potential,
    jacobian_check,
    kostlan_radial_check,
    log_cn_constant,
    normalization_probe_1x1,
    oracle_compare_2x2,
    rejection_sample_2x2,
)

rng = np.random.default_rng(9)

# 1. |det J| of the unitary-conjugation parametrization
m = 4 * (4 + 1) // 2
t = TriangularModel(4, rng.standard_normal(m) + 1j * rng.standard_normal(m))
rep = jacobian_check(t)
print(f"Jacobian at n = 4: |det| = {rep.det_abs:.6e}, "
      f"predicted prod |t_jj - t_ii|^2 = {rep.predicted:.6e}")
print(f"  rel. error = {rep.rel_error:.2e}, "
      f"block structure ok = {rep.block_structure_ok}")

# 2. normalization constants: closed form + the n = 1 quadrature anchor
print("\nlog C_n:", ", ".join(f"C_{k} = {log_cn_constant(k):.4f}" for k in (1, 2, 3, 8)))
probe = normalization_probe_1x1(ginibre_potential())
print(f"n = 1 mass C_1 pi int e^-V = {probe:.12f} (should be 1)")

# 3. pooled radial law at n = 50
batch = collect_ginibre(50, ChainConfig.for_emissions(60, burn_in=2000, thinning=100, seed=10))
kost = kostlan_radial_check([s.diag() for s in batch.samples])
print(f"\nradial law at n = 50: KS = {kost.ks:.4f} on {kost.n_pooled} pooled values")

# 4. n = 2: MALA vs the exact rejection sampler
mcmc = collect_ginibre(2, ChainConfig.for_emissions(2000, burn_in=1500, thinning=20, seed=11))
oracle = rejection_sample_2x2(ginibre_potential(), 2000, np.random.default_rng(12))
cmp = oracle_compare_2x2(mcmc.samples, oracle)
print(f"\nn = 2 oracle (acceptance {oracle.acceptance:.3f}):")
print(f"  mean-Y z = {cmp.mean_y_z:.2f}, diag second-moment z = {cmp.trace_second_z:.2f}")
print(f"  gap KS = {cmp.gap_ks:.4f} (3-sigma critical {cmp.gap_ks_threshold:.4f})")
print(f"  agree within 3 sigma: {cmp.passed}")
