"""Monte Carlo experiments on eigenvector overlaps of sampled Schur forms.

Each experiment consumes a stream of TriangularModel samples and reduces
it to one verdict-ready report:

* ``tail_experiment``: empirical survival of Y against the universal
  bound 2 exp(-alpha delta / 2).
* ``exp1_experiment``: the law of Y itself; for the Gaussian ensemble Y
  is exactly Exp(1), and sqrt(Y) has density 2 x exp(-x^2), the curve
  drawn over the histograms.
* ``gaussian_array_experiment``: joint Gaussianity of the rescaled
  overlap array sqrt(n) (l_j - l_i) <e^{i th_i} v_i, e^{i th_j} v_j>
  across well-separated probes, with independent uniform phases.
* ``local_law_check``: eigenvalue counts in shrinking disks and the
  pair-spacing lower bound, the two a-priori inputs the limit theorem
  rests on.

Pair selection follows the probe convention: the eigenvalue closest to
z, and the one closest to z' excluding the first when the probes agree
or collide on the same eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigenvectors import OverlapRecord, overlap_gram, pair_overlap, y_statistic
from .model import ProbeSet, TriangularModel
from .rng import rep_stream
from .stats import exp1_cdf, ks_distance
from .triangular import admissible_order, select_nearest

DEFAULT_DELTA_GRID = (0.05, 8.0, 40)
HISTOGRAM_RANGE = (0.0, 3.2)
HISTOGRAM_BINS = 32


def default_deltas() -> np.ndarray:
    """40 log-spaced thresholds on [0.05, 8], the plotted survival grid."""
    lo, hi, count = DEFAULT_DELTA_GRID
    return np.geomspace(lo, hi, count)


def select_pair(diag: np.ndarray, z: complex, z_prime: complex) -> tuple[int, int]:
    """Indices of the eigenvalues the probe pair (z, z') singles out.

    i is the closest eigenvalue to z.  j is the closest to z', except
    when z' == z or that eigenvalue is i itself; then j is the closest
    to z' among the rest.
    """
    i = select_nearest(z, diag)
    if z_prime == z:
        j = select_nearest(z_prime, diag, exclude=i)
    else:
        j = select_nearest(z_prime, diag)
        if j == i:
            j = select_nearest(z_prime, diag, exclude=i)
    return i, j


def y_for_pair(
    t: TriangularModel, z: complex, z_prime: complex, sample_id: int = -1
) -> OverlapRecord:
    """Y statistic of the probe-selected eigenvalue pair of one sample."""
    diag = t.diag()
    i, j = select_pair(diag, z, z_prime)
    rec = y_statistic(diag[i], diag[j], pair_overlap(t, i, j), t.n)
    return OverlapRecord(rec.lam, rec.lam_prime, rec.overlap, rec.y, rec.n, sample_id)


@dataclass(frozen=True)
class SurvivalCurve:
    """Empirical survival of Y on a threshold grid, against the tail bound."""

    deltas: np.ndarray
    empirical: np.ndarray
    bound: np.ndarray
    std_error: np.ndarray
    n_samples: int
    passed: np.ndarray  # per delta: empirical <= bound + 3 SE

    @property
    def all_passed(self) -> bool:
        return bool(np.all(self.passed))


def survival_curve(ys, alpha: float, deltas=None) -> SurvivalCurve:
    """Empirical P(Y >= delta) with the bound 2 exp(-alpha delta / 2)."""
    ys = np.sort(np.asarray(ys, dtype=np.float64))
    deltas = default_deltas() if deltas is None else np.asarray(deltas, dtype=np.float64)
    n = len(ys)
    if n == 0:
        raise ValueError("empty Y sample")
    emp = 1.0 - np.searchsorted(ys, deltas, side="left") / n
    bound = 2.0 * np.exp(-0.5 * alpha * deltas)
    se = np.sqrt(emp * (1.0 - emp) / n)
    passed = emp <= bound + 3.0 * se
    return SurvivalCurve(deltas, emp, bound, se, n, passed)


def tail_experiment(
    samples, z: complex, z_prime: complex, alpha: float, deltas=None
) -> tuple[SurvivalCurve, list[OverlapRecord]]:
    """Probe-pair Y per sample, reduced to a survival curve vs the tail bound."""
    records = [y_for_pair(t, z, z_prime, sample_id=s) for s, t in enumerate(samples)]
    curve = survival_curve([r.y for r in records], alpha, deltas)
    return curve, records


@dataclass(frozen=True)
class PairData:
    """Flat arrays of eigenvalue pairs with overlaps and Y values."""

    lam: np.ndarray
    lam_prime: np.ndarray
    overlap: np.ndarray
    y: np.ndarray
    sample_id: np.ndarray
    n: int

    def __len__(self) -> int:
        return len(self.y)

    def records(self) -> list[OverlapRecord]:
        return [
            OverlapRecord(
                complex(self.lam[q]),
                complex(self.lam_prime[q]),
                complex(self.overlap[q]),
                float(self.y[q]),
                self.n,
                int(self.sample_id[q]),
            )
            for q in range(len(self.y))
        ]


@dataclass(frozen=True)
class HistogramData:
    """sqrt(Y) histogram on a fixed grid with the limiting curve per bin.

    ``overlay_density`` holds the bin average of 2 x exp(-x^2) (exact
    integral over the bin divided by its width), so the bar-vs-curve
    discrepancy compares like with like.  ``n_values`` counts every
    value, including the few falling beyond the grid.
    """

    bin_left: np.ndarray
    bin_right: np.ndarray
    count: np.ndarray
    overlay_density: np.ndarray
    n_values: int

    def density(self) -> np.ndarray:
        width = self.bin_right - self.bin_left
        return self.count / (self.n_values * width)

    def discrepancy(self) -> float:
        """Integrated |bar - curve| over the grid."""
        width = self.bin_right - self.bin_left
        return float(np.sum(np.abs(self.density() - self.overlay_density) * width))


def sqrt_y_histogram(sqrt_y: np.ndarray) -> HistogramData:
    """Histogram sqrt(Y) against the bin-averaged density 2 x exp(-x^2)."""
    lo, hi = HISTOGRAM_RANGE
    edges = np.linspace(lo, hi, HISTOGRAM_BINS + 1)
    finite = sqrt_y[np.isfinite(sqrt_y)]
    count, _ = np.histogram(finite, bins=edges)
    left, right = edges[:-1], edges[1:]
    overlay = (np.exp(-(left**2)) - np.exp(-(right**2))) / (right - left)
    return HistogramData(left, right, count, overlay, len(sqrt_y))


@dataclass(frozen=True)
class Exp1Report:
    """Distribution of Y pooled over samples, with histogram artifacts."""

    mode: str
    n: int
    n_samples: int
    pairs: PairData
    mean_y: float
    ks_exp1: float
    histogram: HistogramData
    rescale_factor: float


def exp1_experiment(
    samples,
    mode: str = "probe-pair",
    z: complex = 0.0,
    z_prime: complex = 0.3,
    rescale: bool = False,
) -> Exp1Report:
    """Pool Y over the sample stream, in probe-pair or all-pairs mode.

    With ``rescale`` the sqrt(Y) histogram is built on sqrt(Y / mean Y),
    pinning the empirical second moment of sqrt(Y) to 1; this is how
    non-Gaussian ensembles are compared against the limiting curve.
    """
    if mode not in ("probe-pair", "all-pairs"):
        raise ValueError(f"unknown mode {mode!r}")
    lam, lam_prime, ovl, ys, sids = [], [], [], [], []
    n = None
    n_samples = 0
    for s, t in enumerate(samples):
        n = t.n if n is None else n
        if t.n != n:
            raise ValueError("mixed matrix sizes in one experiment")
        n_samples += 1
        if mode == "probe-pair":
            rec = y_for_pair(t, z, z_prime, sample_id=s)
            lam.append(rec.lam)
            lam_prime.append(rec.lam_prime)
            ovl.append(rec.overlap)
            ys.append(rec.y)
            sids.append(s)
        else:
            diag = t.diag()
            gram = overlap_gram(t)
            iu, ju = np.triu_indices(t.n, k=1)
            o = gram[iu, ju]
            gap2 = np.abs(diag[ju] - diag[iu]) ** 2
            o2 = np.abs(o) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                y = t.n * gap2 * o2 / (1.0 - o2)
            y = np.where(o2 == 0.0, 0.0, np.where(o2 >= 1.0, np.inf, y))
            lam.append(diag[iu])
            lam_prime.append(diag[ju])
            ovl.append(o)
            ys.append(y)
            sids.append(np.full(len(y), s, dtype=np.int64))
    if n_samples == 0:
        raise ValueError("no samples")
    if mode == "probe-pair":
        pairs = PairData(
            np.asarray(lam),
            np.asarray(lam_prime),
            np.asarray(ovl),
            np.asarray(ys, dtype=np.float64),
            np.asarray(sids, dtype=np.int64),
            n,
        )
    else:
        pairs = PairData(
            np.concatenate(lam),
            np.concatenate(lam_prime),
            np.concatenate(ovl),
            np.concatenate(ys),
            np.concatenate(sids),
            n,
        )
    finite = pairs.y[np.isfinite(pairs.y)]
    mean_y = float(np.mean(finite))
    factor = np.sqrt(mean_y) if rescale else 1.0
    hist = sqrt_y_histogram(np.sqrt(pairs.y) / factor)
    return Exp1Report(
        mode,
        n,
        n_samples,
        pairs,
        mean_y,
        ks_distance(pairs.y, exp1_cdf),
        hist,
        float(factor),
    )


@dataclass(frozen=True)
class GaussianArraySample:
    """Rescaled overlap array of one repetition, entries in pair order (q < r)."""

    rep: int
    entries: np.ndarray


@dataclass(frozen=True)
class GaussianArrayReport:
    """Moment checks of the overlap array against iid standard complex Gaussians.

    Null thresholds are 3 sigma for the empirical moments of R iid
    standard complex Gaussians: |mean| < 3/sqrt(R), |E Z^2| <
    3 sqrt(2/R), E|Z|^2 in 1 +- 3/sqrt(R), E|Z|^4 in 2 +- 3 sqrt(20/R),
    and both cross moments of distinct entries below 3/sqrt(R).
    """

    k: int
    n: int
    reps_used: int
    collisions: int
    samples: list[GaussianArraySample]
    mean: np.ndarray
    pseudo_second: np.ndarray
    abs_second: np.ndarray
    abs_fourth: np.ndarray
    cross_conj: np.ndarray
    cross_plain: np.ndarray
    checks: dict

    @property
    def all_ok(self) -> bool:
        return all(bool(np.all(v)) for v in self.checks.values())


def gaussian_array_experiment(
    samples, probe_set: ProbeSet, seed: int
) -> GaussianArrayReport:
    """Collect the phase-randomized overlap array over repetitions and test it.

    Each repetition consumes one sample and one fresh uniform phase per
    probe.  Probes select distinct eigenvalues greedily in probe order; a
    repetition where exclusion had to override some probe's unconstrained
    nearest eigenvalue is counted as a collision and skipped.
    """
    k = probe_set.k
    if k < 2:
        raise ValueError("need at least two probes")
    qs, rs = np.triu_indices(k, k=1)
    arrays: list[GaussianArraySample] = []
    collisions = 0
    n = None
    for rep, t in enumerate(samples):
        if n is None:
            n = t.n
            probe_set.require_separation(n)
        rng = rep_stream(seed, rep)
        thetas = rng.uniform(0.0, 2.0 * np.pi, size=k)
        diag = t.diag()
        chosen: list[int] = []
        collided = False
        for z in probe_set.probes:
            unconstrained = select_nearest(z, diag)
            pick = select_nearest(z, diag, exclude=chosen) if chosen else unconstrained
            if pick != unconstrained:
                collided = True
            chosen.append(pick)
        if collided:
            collisions += 1
            continue
        lam = diag[chosen]
        entries = np.empty(len(qs), dtype=np.complex128)
        for w, (q, r) in enumerate(zip(qs, rs)):
            ov = pair_overlap(t, chosen[q], chosen[r], thetas[q], thetas[r])
            entries[w] = np.sqrt(n) * (lam[r] - lam[q]) * ov
        arrays.append(GaussianArraySample(rep, entries))
    if not arrays:
        raise ValueError("every repetition collided; probes are too close")
    z = np.stack([a.entries for a in arrays])  # shape (R, k(k-1)/2)
    big_r = z.shape[0]
    mean = z.mean(axis=0)
    pseudo = (z**2).mean(axis=0)
    abs2 = (np.abs(z) ** 2).mean(axis=0)
    abs4 = (np.abs(z) ** 4).mean(axis=0)
    pa, pb = np.triu_indices(z.shape[1], k=1)
    cross_conj = (z[:, pa] * np.conj(z[:, pb])).mean(axis=0)
    cross_plain = (z[:, pa] * z[:, pb]).mean(axis=0)
    sr = np.sqrt(big_r)
    checks = {
        "mean": np.abs(mean) < 3.0 / sr,
        "pseudo_second": np.abs(pseudo) < 3.0 * np.sqrt(2.0) / sr,
        "abs_second": np.abs(abs2 - 1.0) < 3.0 / sr,
        "abs_fourth": np.abs(abs4 - 2.0) < 3.0 * np.sqrt(20.0) / sr,
        "cross_conj": np.abs(cross_conj) < 3.0 / sr,
        "cross_plain": np.abs(cross_plain) < 3.0 / sr,
    }
    return GaussianArrayReport(
        k,
        n,
        big_r,
        collisions,
        arrays,
        mean,
        pseudo,
        abs2,
        abs4,
        cross_conj,
        cross_plain,
        checks,
    )


@dataclass(frozen=True)
class LocalLawReport:
    """Eigenvalue count in a shrinking disk, plus the optional pair spacing."""

    n: int
    count: int
    count_threshold: float
    count_ok: bool
    spacing_scaled: float | None = None
    spacing_threshold: float | None = None
    spacing_ok: bool | None = None


def local_law_check(
    diag,
    z0: complex = 0.0,
    s: float = 0.3,
    z: complex | None = None,
    z_prime: complex | None = None,
    epsilon: float | None = None,
    delta: float | None = None,
) -> LocalLawReport:
    """Count eigenvalues within n^-s of z0 against the n^{1-2s}/5 floor.

    When a probe pair plus exponents (epsilon, delta) with delta <
    epsilon are supplied, also checks the selected pair's rescaled gap
    sqrt(n) |l - l'| against n^delta.
    """
    diag = np.asarray(diag, dtype=np.complex128)
    n = len(diag)
    if not 0.0 < s < 0.5:
        raise ValueError(f"s must be in (0, 1/2), got {s}")
    count = int(np.sum(np.abs(diag - z0) <= n ** (-s)))
    threshold = n ** (1.0 - 2.0 * s) / 5.0
    report = LocalLawReport(n, count, threshold, count >= threshold)
    if z is None:
        return report
    if epsilon is None or delta is None or not delta < epsilon:
        raise ValueError("spacing check needs delta < epsilon")
    if np.sqrt(n) * abs(z - z_prime) < n**epsilon and z != z_prime:
        raise ValueError("probes are not separated at scale n^epsilon")
    i, j = select_pair(diag, z, z_prime)
    gap_scaled = float(np.sqrt(n) * abs(diag[i] - diag[j]))
    spacing_threshold = float(n**delta)
    return LocalLawReport(
        n,
        count,
        threshold,
        count >= threshold,
        gap_scaled,
        spacing_threshold,
        gap_scaled >= spacing_threshold,
    )


def ginibre_ordered_frame(
    t: TriangularModel, probes, rng: np.random.Generator
) -> TriangularModel:
    """Rebuild a Ginibre sample in the admissible frame of the probes.

    The diagonal is permuted into the admissible order and the
    off-diagonal entries are redrawn iid complex Gaussian of variance
    1/n.  This is distribution-preserving for the Gaussian ensemble only,
    where the off-diagonal law is the same conditional on any diagonal
    ordering; it exists so the proof-scale diagnostics can be read in the
    frame where the selected eigenvalues come first.
    """
    diag = t.diag()
    perm = admissible_order(probes, diag)
    n = t.n
    dense = np.zeros((n, n), dtype=np.complex128)
    iu, ju = np.triu_indices(n, k=1)
    g = rng.standard_normal((2, len(iu)))
    dense[iu, ju] = (g[0] + 1j * g[1]) / np.sqrt(2.0 * n)
    dense[np.arange(n), np.arange(n)] = diag[perm]
    return TriangularModel.from_dense(dense)
