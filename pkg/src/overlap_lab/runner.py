"""Run orchestration: config in, verdicts and artifacts out.

``run`` owns the whole lifecycle of one experiment: resolve the chain
schedule, draw samples, reduce them, assert the kind's pass criteria,
and (when an output directory is set) persist

* ``manifest.json`` — full config, resolved/tuned sampler parameters,
  and a content hash of the scientific inputs (everything except
  output plumbing), so two runs are comparable by hash alone;
* ``summary.json`` — statistics and pass/fail verdicts only, written
  canonically so identical config+seed runs are byte-identical;
* CSV data files per kind (samples, overlaps, histogram, survival,
  array entries), RFC-4180 with a header row.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import validators
from .config import ExperimentConfig, canonical_json
from .eigenvectors import OverlapRecord
from .experiments import (
    HistogramData,
    SurvivalCurve,
    exp1_experiment,
    gaussian_array_experiment,
    local_law_check,
    tail_experiment,
)
from .model import TriangularModel
from .potentials import convexity_probe
from .rng import aux_stream
from .samplers import SampleBatch, collect_general, collect_ginibre
from .validators import (
    jacobian_check,
    kostlan_radial_check,
    log_cn_constant,
    normalization_probe_1x1,
    oracle_compare_2x2,
    rejection_sample_2x2,
)

EXP1_MEAN_RANGE = (0.93, 1.07)
EXP1_KS_LIMIT = 0.04
FIGURE1_DISCREPANCY_LIMIT = 0.15
LOCAL_LAW_PASS_FRACTION = 0.95
KOSTLAN_KS_LIMIT = 0.03


@dataclass(frozen=True)
class RunResult:
    summary: dict
    passed: bool
    artifacts: dict[str, str]
    batch: SampleBatch | None = None


def content_hash(config: ExperimentConfig) -> str:
    """sha256 over the scientific inputs: config minus output plumbing,
    with the chain schedule resolved to what actually runs."""
    obj = config.to_json_dict()
    obj.pop("output_dir")
    obj.pop("save_samples")
    obj["chain"] = config.resolved_chain().to_json_dict()
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def draw_samples(config: ExperimentConfig) -> SampleBatch:
    cfg = config.resolved_chain()
    if config.is_ginibre:
        batch = collect_ginibre(config.n, cfg)
    else:
        batch = collect_general(config.n, config.potential, cfg)
    return SampleBatch(batch.samples[: config.reps], batch.chains)


def _f(x) -> float:
    return float(x)


def write_samples_csv(path: Path, samples: list[TriangularModel]) -> None:
    n = samples[0].n
    header = []
    for i in range(n):
        for j in range(i, n):
            header += [f"t_re_{i + 1}_{j + 1}", f"t_im_{i + 1}_{j + 1}"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for t in samples:
            row = np.empty(2 * len(t.entries))
            row[0::2] = t.entries.real
            row[1::2] = t.entries.imag
            w.writerow([repr(_f(v)) for v in row])


def read_samples_csv(path: Path) -> list[TriangularModel]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    m = len(header) // 2
    n = int((np.sqrt(8 * m + 1) - 1) / 2)
    out = []
    for row in data:
        vals = np.array([float(v) for v in row])
        out.append(TriangularModel(n, vals[0::2] + 1j * vals[1::2]))
    return out


def write_overlaps_csv(path: Path, records: list[OverlapRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(
            [
                "lambda_re",
                "lambda_im",
                "lambdap_re",
                "lambdap_im",
                "overlap_re",
                "overlap_im",
                "y",
                "n",
                "sample_id",
            ]
        )
        for r in records:
            w.writerow(
                [
                    repr(_f(r.lam.real)),
                    repr(_f(r.lam.imag)),
                    repr(_f(r.lam_prime.real)),
                    repr(_f(r.lam_prime.imag)),
                    repr(_f(r.overlap.real)),
                    repr(_f(r.overlap.imag)),
                    repr(_f(r.y)),
                    r.n,
                    r.sample_id,
                ]
            )


def write_histogram_csv(path: Path, hist: HistogramData) -> None:
    density = hist.density()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["bin_left", "bin_right", "count", "overlay_density", "density"])
        for q in range(len(hist.count)):
            w.writerow(
                [
                    repr(_f(hist.bin_left[q])),
                    repr(_f(hist.bin_right[q])),
                    int(hist.count[q]),
                    repr(_f(hist.overlay_density[q])),
                    repr(_f(density[q])),
                ]
            )


def write_survival_csv(path: Path, curve: SurvivalCurve) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["delta", "empirical", "bound", "std_error", "passed"])
        for q in range(len(curve.deltas)):
            w.writerow(
                [
                    repr(_f(curve.deltas[q])),
                    repr(_f(curve.empirical[q])),
                    repr(_f(curve.bound[q])),
                    repr(_f(curve.std_error[q])),
                    int(curve.passed[q]),
                ]
            )


def write_array_csv(path: Path, report) -> None:
    k = report.k
    qs, rs = np.triu_indices(k, k=1)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["rep", "q", "r", "z_re", "z_im"])
        for sample in report.samples:
            for w_idx, (q, r) in enumerate(zip(qs, rs)):
                z = sample.entries[w_idx]
                w.writerow([sample.rep, int(q) + 1, int(r) + 1, repr(_f(z.real)), repr(_f(z.imag))])


def _chain_summaries(batch: SampleBatch | None) -> list[dict]:
    if batch is None:
        return []
    return [d.to_json_dict() for d in batch.chains]


def _run_sample(config: ExperimentConfig):
    batch = draw_samples(config)
    diag_abs = np.concatenate([np.abs(t.diag()) for t in batch.samples])
    summary = {
        "kind": "sample",
        "n": config.n,
        "n_samples": len(batch.samples),
        "mean_abs_eigenvalue": _f(np.mean(diag_abs)),
        "max_abs_eigenvalue": _f(np.max(diag_abs)),
        "passed": True,
    }
    files = {} if not config.save_samples else {"samples.csv": ("samples", batch.samples)}
    return summary, True, files, batch


def _run_tail(config: ExperimentConfig):
    probe = convexity_probe(config.potential)
    if not probe.passed:
        raise ValueError(
            "tail bound needs a certified convexity split; "
            f"worst midpoint margin {probe.worst_margin:.3e} for alpha="
            f"{config.potential.alpha}"
        )
    batch = draw_samples(config)
    curve, records = tail_experiment(
        batch.samples, config.z, config.z_prime, config.potential.alpha
    )
    ys = np.array([r.y for r in records])
    summary = {
        "kind": "tail",
        "n": config.n,
        "n_samples": curve.n_samples,
        "alpha": config.potential.alpha,
        "mean_y": _f(np.mean(ys[np.isfinite(ys)])),
        "max_excess_over_bound": _f(
            np.max(curve.empirical - curve.bound - 3.0 * curve.std_error)
        ),
        "deltas_checked": int(len(curve.deltas)),
        "passed": curve.all_passed,
    }
    files = {
        "survival.csv": ("survival", curve),
        "overlaps.csv": ("overlaps", records),
    }
    return summary, curve.all_passed, files, batch


def _run_exp1(config: ExperimentConfig):
    batch = draw_samples(config)
    report = exp1_experiment(
        batch.samples, mode="probe-pair", z=config.z, z_prime=config.z_prime
    )
    lo, hi = EXP1_MEAN_RANGE
    mean_ok = lo <= report.mean_y <= hi
    ks_ok = report.ks_exp1 < EXP1_KS_LIMIT
    passed = mean_ok and ks_ok
    summary = {
        "kind": "exp1",
        "n": config.n,
        "n_samples": report.n_samples,
        "mean_y": _f(report.mean_y),
        "mean_range": [lo, hi],
        "ks_exp1": _f(report.ks_exp1),
        "ks_limit": EXP1_KS_LIMIT,
        "histogram_discrepancy": _f(report.histogram.discrepancy()),
        "passed": passed,
    }
    files = {
        "overlaps.csv": ("overlaps", report.pairs.records()),
        "histogram.csv": ("histogram", report.histogram),
    }
    return summary, passed, files, batch


def _run_figure1(config: ExperimentConfig):
    rescale = config.rescale if config.rescale is not None else not config.is_ginibre
    batch = draw_samples(config)
    report = exp1_experiment(batch.samples, mode="all-pairs", rescale=rescale)
    discrepancy = report.histogram.discrepancy()
    passed = discrepancy < FIGURE1_DISCREPANCY_LIMIT
    summary = {
        "kind": "figure1",
        "n": config.n,
        "n_samples": report.n_samples,
        "n_pairs": len(report.pairs),
        "mean_y": _f(report.mean_y),
        "rescale_factor": _f(report.rescale_factor),
        "histogram_discrepancy": _f(discrepancy),
        "discrepancy_limit": FIGURE1_DISCREPANCY_LIMIT,
        "passed": passed,
    }
    files = {"histogram.csv": ("histogram", report.histogram)}
    return summary, passed, files, batch


def _run_gaussian_array(config: ExperimentConfig):
    batch = draw_samples(config)
    report = gaussian_array_experiment(batch.samples, config.probes, config.seed)
    passed = report.all_ok
    summary = {
        "kind": "gaussian_array",
        "n": config.n,
        "k": report.k,
        "reps_used": report.reps_used,
        "collisions": report.collisions,
        "abs_mean": [_f(v) for v in np.abs(report.mean)],
        "abs_pseudo_second": [_f(v) for v in np.abs(report.pseudo_second)],
        "abs_second": [_f(v) for v in report.abs_second],
        "abs_fourth": [_f(v) for v in report.abs_fourth],
        "max_abs_cross_conj": _f(np.max(np.abs(report.cross_conj))),
        "max_abs_cross_plain": _f(np.max(np.abs(report.cross_plain))),
        "checks": {k: [bool(b) for b in np.atleast_1d(v)] for k, v in report.checks.items()},
        "passed": passed,
    }
    files = {"array_samples.csv": ("array", report)}
    return summary, passed, files, batch


def _run_local_law(config: ExperimentConfig):
    batch = draw_samples(config)
    reports = [local_law_check(t.diag(), config.z0, config.s) for t in batch.samples]
    frac = float(np.mean([r.count_ok for r in reports]))
    passed = frac >= LOCAL_LAW_PASS_FRACTION
    summary = {
        "kind": "local_law",
        "n": config.n,
        "s": config.s,
        "n_samples": len(reports),
        "count_threshold": _f(reports[0].count_threshold),
        "mean_count": _f(np.mean([r.count for r in reports])),
        "pass_fraction": frac,
        "required_fraction": LOCAL_LAW_PASS_FRACTION,
        "passed": passed,
    }
    return summary, passed, {}, batch


def _run_validate_jacobian(config: ExperimentConfig):
    rng = aux_stream(config.seed)
    worst = 0.0
    blocks_ok = True
    count = 0
    for n in range(2, 7):
        for _ in range(config.reps):
            g = rng.standard_normal((2, n * (n + 1) // 2))
            t = TriangularModel(n, g[0] + 1j * g[1])
            rep = jacobian_check(t)
            worst = max(worst, rep.rel_error)
            blocks_ok = blocks_ok and rep.block_structure_ok
            count += 1
    passed = worst <= validators.JACOBIAN_TOLERANCE and blocks_ok
    summary = {
        "kind": "validate_jacobian",
        "instances": count,
        "max_rel_error": _f(worst),
        "tolerance": validators.JACOBIAN_TOLERANCE,
        "block_structure_ok": blocks_ok,
        "passed": passed,
    }
    return summary, passed, {}, None


def _run_validate_cn(config: ExperimentConfig):
    import math

    worst = 0.0
    for n in range(1, 13):
        lhs = log_cn_constant(n) - log_cn_constant(n + 1)
        rhs = (3 * n + 1) * math.log(math.pi) + math.lgamma(n + 1)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    probe = normalization_probe_1x1(config.potential)
    quad_err = abs(probe - 1.0) if config.is_ginibre else None
    passed = worst <= 1e-12 and (quad_err is None or quad_err <= 1e-6)
    summary = {
        "kind": "validate_cn",
        "recursion_max_rel_error": _f(worst),
        "one_by_one_mass": _f(probe),
        "quadrature_error": None if quad_err is None else _f(quad_err),
        "passed": passed,
    }
    return summary, passed, {}, None


def _run_validate_kostlan(config: ExperimentConfig):
    if not config.is_ginibre:
        raise ValueError("the radial oracle is exact for the Gaussian ensemble only")
    batch = draw_samples(config)
    report = kostlan_radial_check([t.diag() for t in batch.samples])
    passed = report.ks < KOSTLAN_KS_LIMIT
    summary = {
        "kind": "validate_kostlan",
        "n": report.n,
        "n_pooled": report.n_pooled,
        "ks": _f(report.ks),
        "ks_limit": KOSTLAN_KS_LIMIT,
        "passed": passed,
    }
    return summary, passed, {}, batch


def _run_validate_oracle2(config: ExperimentConfig):
    if config.n != 2:
        raise ValueError("the rejection oracle is specific to n = 2")
    batch = draw_samples(config)
    oracle = rejection_sample_2x2(config.potential, config.reps, aux_stream(config.seed))
    report = oracle_compare_2x2(batch.samples, oracle)
    summary = {
        "kind": "validate_oracle2",
        "n_mcmc": len(batch.samples),
        "n_oracle": len(oracle.t12),
        "oracle_acceptance": _f(oracle.acceptance),
        "mean_y_z": _f(report.mean_y_z),
        "trace_second_z": _f(report.trace_second_z),
        "gap_ks": _f(report.gap_ks),
        "gap_ks_threshold": _f(report.gap_ks_threshold),
        "passed": report.passed,
    }
    return summary, report.passed, {}, batch


_RUNNERS = {
    "sample": _run_sample,
    "tail": _run_tail,
    "exp1": _run_exp1,
    "figure1": _run_figure1,
    "gaussian_array": _run_gaussian_array,
    "local_law": _run_local_law,
    "validate_jacobian": _run_validate_jacobian,
    "validate_cn": _run_validate_cn,
    "validate_kostlan": _run_validate_kostlan,
    "validate_oracle2": _run_validate_oracle2,
}

_WRITERS = {
    "samples": write_samples_csv,
    "overlaps": write_overlaps_csv,
    "histogram": write_histogram_csv,
    "survival": write_survival_csv,
    "array": write_array_csv,
}


def run(config: ExperimentConfig) -> RunResult:
    """Execute one configured run and persist artifacts if requested."""
    summary, passed, files, batch = _RUNNERS[config.kind](config)
    artifacts: dict[str, str] = {}
    if config.output_dir is not None:
        out = Path(config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        manifest = {
            "config": config.to_json_dict(),
            "chain_resolved": config.resolved_chain().to_json_dict(),
            "chains": _chain_summaries(batch),
            "content_hash": content_hash(config),
        }
        (out / "manifest.json").write_text(canonical_json(manifest), encoding="utf-8")
        (out / "summary.json").write_text(canonical_json(summary), encoding="utf-8")
        artifacts["manifest.json"] = str(out / "manifest.json")
        artifacts["summary.json"] = str(out / "summary.json")
        for name, (writer_key, payload) in files.items():
            _WRITERS[writer_key](out / name, payload)
            artifacts[name] = str(out / name)
    return RunResult(summary, passed, artifacts, batch)
