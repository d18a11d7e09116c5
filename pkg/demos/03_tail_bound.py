"""Empirical survival of Y against the universal bound 2 exp(-alpha delta / 2).

The bound needs the convexity margin alpha certified for the potential;
alpha = 2 works for both reference potentials (and is the best possible
for V(x) = x).  The empirical curve should run below bound + 3 SE on the
whole threshold grid.
"""

from overlap_lab import (
    ChainConfig,
    collect_general,
    collect_ginibre,
    convexity_probe,
    ginibre_potential,
    quartic_quintic_potential,
    tail_experiment,
)

n = 20
cfg = ChainConfig.for_emissions(500, burn_in=2000, thinning=100, seed=3)

cases = [
    ("V(x) = x", ginibre_potential(), collect_ginibre(n, cfg)),
    (
        "quartic-quintic",
        quartic_quintic_potential(),
        collect_general(n, quartic_quintic_potential(), cfg),
    ),
]

for label, potential, batch in cases:
    probe = convexity_probe(potential)
    print(f"{label}: alpha = {potential.alpha} "
          f"({'certified' if probe.passed else 'NOT certified'}, "
          f"worst midpoint margin {probe.worst_margin:.2e})")
    curve, records = tail_experiment(batch.samples, 0.0, 0.3, alpha=potential.alpha)
    print(f"  {curve.n_samples} samples, "
          f"{int(curve.passed.sum())}/{len(curve.deltas)} thresholds passed")
    print("  delta   empirical   bound     margin")
    for q in range(0, len(curve.deltas), 8):
        margin = curve.bound[q] + 3 * curve.std_error[q] - curve.empirical[q]
        print(f"  {curve.deltas[q]:5.2f}   {curve.empirical[q]:.5f}     "
              f"{curve.bound[q]:.5f}   {margin:+.5f}")
    print()
