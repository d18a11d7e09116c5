"""Acceptance gate: every headline property at its stated tolerance.

One test per criterion; each prints a single [PASS]/[FAIL] line with the
measured statistic (run with ``pytest -s`` to see them on success).  The
expensive ensembles come from session-scoped fixtures in conftest.py, so
the whole gate costs one set of MCMC runs.
"""

import numpy as np

from overlap_lab import (
    ChainConfig,
    ProbeSet,
    collect_general,
    collect_ginibre,
    convexity_probe,
    eigenvector_matrix,
    exp1_experiment,
    gaussian_array_experiment,
    ginibre_potential,
    grad_log_density,
    jacobian_check,
    kostlan_radial_check,
    ks_two_sample,
    ks_two_sample_critical,
    local_law_check,
    mean_z_score,
    oracle_compare_2x2,
    pair_overlap,
    quartic_quintic_potential,
    rejection_sample_2x2,
    tail_experiment,
    y_for_pair,
)
from overlap_lab.potentials import PotentialSpec

from .conftest import random_triangular
from .oracles import finite_difference_grad, inverse_iteration_overlap_abs


def _verdict(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_exp1_law(ginibre_50_probe):
    report = exp1_experiment(ginibre_50_probe.samples, mode="probe-pair", z=0.0, z_prime=0.3)
    ok = 0.93 <= report.mean_y <= 1.07 and report.ks_exp1 < 0.04
    _verdict(
        "Exp(1) law",
        ok,
        f"mean Y = {report.mean_y:.4f} (need [0.93, 1.07]), "
        f"KS = {report.ks_exp1:.4f} (need < 0.04), "
        f"{report.n_samples} samples at n = {report.n}",
    )


def test_tail_bound(ginibre_20, quartic_20):
    details = []
    ok = True
    for label, batch in [("V(x) = x", ginibre_20), ("quartic-quintic", quartic_20)]:
        curve, _ = tail_experiment(batch.samples, 0.0, 0.3, alpha=2.0)
        excess = float(np.max(curve.empirical - curve.bound - 3.0 * curve.std_error))
        ok = ok and curve.all_passed
        details.append(
            f"{label}: {int(curve.passed.sum())}/{len(curve.deltas)} deltas, "
            f"max excess {excess:+.4f}"
        )
    _verdict("tail bound 2 exp(-alpha delta / 2)", ok, "; ".join(details))


def test_figure1_histograms(ginibre_150, quartic_150):
    gin = exp1_experiment(ginibre_150.samples, mode="all-pairs", rescale=False)
    qq = exp1_experiment(quartic_150.samples, mode="all-pairs", rescale=True)
    d_gin = gin.histogram.discrepancy()
    d_qq = qq.histogram.discrepancy()
    ok = d_gin < 0.15 and d_qq < 0.15
    _verdict(
        "figure1 sqrt(Y) histograms",
        ok,
        f"integrated |bars - curve|: Gaussian {d_gin:.4f}, "
        f"quartic-quintic {d_qq:.4f} (need < 0.15; rescale factor "
        f"{qq.rescale_factor:.4f}); 40 samples each at n = 150",
    )


def test_gaussian_overlap_array(ginibre_150_array):
    report = gaussian_array_experiment(
        ginibre_150_array.samples, ProbeSet((0.0, 0.5, 0.5j), 0.25), seed=4151
    )
    failed = [k for k, v in report.checks.items() if not bool(np.all(v))]
    _verdict(
        "Gaussian overlap array",
        report.all_ok,
        f"k = {report.k}, {report.reps_used} repetitions, "
        f"{report.collisions} collisions; "
        f"max |mean| = {np.max(np.abs(report.mean)):.4f}, "
        f"E|Z|^2 in [{report.abs_second.min():.3f}, {report.abs_second.max():.3f}], "
        f"E|Z|^4 in [{report.abs_fourth.min():.3f}, {report.abs_fourth.max():.3f}]"
        + (f"; failed: {failed}" if failed else ""),
    )


def test_jacobian_factorization():
    rng = np.random.default_rng(77)
    worst = 0.0
    blocks_ok = True
    for n in range(2, 7):
        for _ in range(50):
            rep = jacobian_check(random_triangular(n, rng, min_gap=0.02))
            worst = max(worst, rep.rel_error)
            blocks_ok = blocks_ok and rep.block_structure_ok
    ok = worst <= 1e-10 and blocks_ok
    _verdict(
        "conjugation Jacobian",
        ok,
        f"50 instances per n in 2..6; worst rel. error {worst:.3e} "
        f"(need <= 1e-10), block structure {'ok' if blocks_ok else 'violated'}",
    )


def test_back_substitution_correctness(
    ginibre_150, quartic_150, ginibre_20, quartic_20, ginibre_50_probe
):
    worst_residual = 0.0
    count = 0
    for batch in (ginibre_150, quartic_150, ginibre_20, quartic_20, ginibre_50_probe):
        for t in batch.samples:
            dense = t.to_dense()
            x, norms = eigenvector_matrix(t)
            resid = np.linalg.norm(dense @ x - x * np.diagonal(dense), axis=0) / norms
            worst_residual = max(worst_residual, float(np.max(resid)))
            count += 1
    rng = np.random.default_rng(88)
    worst_oracle = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 9))
        t = random_triangular(n, rng, min_gap=0.3)
        i, j = sorted(rng.choice(n, size=2, replace=False))
        ours = abs(pair_overlap(t, int(i), int(j)))
        ref = inverse_iteration_overlap_abs(t.to_dense(), int(i), int(j), rng)
        worst_oracle = max(worst_oracle, abs(ours - ref))
    ok = worst_residual <= 1e-10 and worst_oracle <= 1e-8
    _verdict(
        "back-substituted eigenvectors",
        ok,
        f"max residual {worst_residual:.3e} over {count} samples (need <= 1e-10); "
        f"max |overlap - inverse-iteration oracle| {worst_oracle:.3e} "
        f"over 20 instances (need <= 1e-8)",
    )


def test_gradient_correctness():
    rng = np.random.default_rng(99)
    potentials = [
        ginibre_potential(),
        quartic_quintic_potential(),
        PotentialSpec((0.0, 1.0), 2.0),
        PotentialSpec((0.3, 0.0, 0.5), 1.0),
    ]
    worst = 0.0
    for q in range(20):
        n = int(rng.integers(2, 6))
        t = random_triangular(n, rng, min_gap=0.3)
        p = potentials[q % len(potentials)]
        grad = grad_log_density(t, p)
        fd = finite_difference_grad(t, p)
        err = np.max(np.abs(fd - grad.entries)) / np.max(np.abs(fd))
        worst = max(worst, float(err))
    ok = worst <= 1e-6
    _verdict(
        "log-density gradient",
        ok,
        f"worst rel. error vs central differences {worst:.3e} over 20 (T, V) "
        f"instances (need <= 1e-6)",
    )


def test_sampler_validation(ginibre_150, ginibre_20, general_ginibre_20):
    # radial law of the pooled spectrum at n = 150
    kostlan = kostlan_radial_check([t.diag() for t in ginibre_150.samples])
    radial_ok = kostlan.ks < 0.03

    # n = 2: both MCMC paths against the exact rejection oracle
    oracle_bits = []
    oracle_ok = True
    cases = [
        ("x", ginibre_potential(), None),
        ("x^2", PotentialSpec((0.0, 1.0), 2.0), None),
        ("quartic-quintic", quartic_quintic_potential(), None),
    ]
    for idx, (label, p, _) in enumerate(cases):
        cfg = ChainConfig.for_emissions(3000, burn_in=2000, thinning=40, seed=600 + idx)
        if p.coefficients == (1.0,):
            batch = collect_ginibre(2, cfg)
        else:
            batch = collect_general(2, p, cfg)
        oracle = rejection_sample_2x2(p, 3000, np.random.default_rng(700 + idx))
        cmp = oracle_compare_2x2(batch.samples, oracle)
        oracle_ok = oracle_ok and cmp.passed
        oracle_bits.append(
            f"{label}: z = ({cmp.mean_y_z:.2f}, {cmp.trace_second_z:.2f}), "
            f"gap KS {cmp.gap_ks:.4f} < {cmp.gap_ks_threshold:.4f}"
        )

    # same law from the two independent samplers at n = 20
    pooled_a = np.concatenate([20 * np.abs(t.diag()) ** 2 for t in ginibre_20.samples])
    pooled_b = np.concatenate(
        [20 * np.abs(t.diag()) ** 2 for t in general_ginibre_20.samples]
    )
    cross_ks = ks_two_sample(pooled_a, pooled_b)
    cross_crit = ks_two_sample_critical(len(pooled_a), len(pooled_b))
    ya = [y_for_pair(t, 0.0, 0.3).y for t in ginibre_20.samples]
    yb = [y_for_pair(t, 0.0, 0.3).y for t in general_ginibre_20.samples]
    cross_z = mean_z_score(ya, yb)
    cross_ok = cross_ks < cross_crit and cross_z < 3.0

    ok = radial_ok and oracle_ok and cross_ok
    _verdict(
        "sampler validation",
        ok,
        f"radial KS = {kostlan.ks:.4f} (need < 0.03, {kostlan.n_pooled} pooled); "
        + "; ".join(oracle_bits)
        + f"; cross-sampler KS = {cross_ks:.4f} < {cross_crit:.4f}, "
        f"probe-Y z = {cross_z:.2f} < 3",
    )


def test_local_law_counts(ginibre_150):
    reports = [local_law_check(t.diag(), z0=0.0, s=0.3) for t in ginibre_150.samples]
    frac = float(np.mean([r.count_ok for r in reports]))
    counts = [r.count for r in reports]
    ok = frac >= 0.95
    _verdict(
        "local-law disk counts",
        ok,
        f"pass fraction {frac:.3f} over {len(reports)} samples (need >= 0.95); "
        f"counts in [{min(counts)}, {max(counts)}] vs threshold "
        f"{reports[0].count_threshold:.2f}",
    )


def test_convexity_probes():
    gin = convexity_probe(ginibre_potential())
    qq = convexity_probe(quartic_quintic_potential())
    ok = gin.passed and qq.passed and max(gin.worst_margin, qq.worst_margin) <= 1e-10
    _verdict(
        "convexity probes",
        ok,
        f"worst midpoint margin: V(x) = x {gin.worst_margin:.3e}, "
        f"quartic-quintic {qq.worst_margin:.3e} (need <= 1e-10 slack at alpha = 2)",
    )
