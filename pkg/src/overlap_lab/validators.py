"""Structural validators: exact identities the simulation must reproduce.

These are the non-statistical checks.  Each one has a closed-form
answer, so failures point at implementation bugs rather than Monte
Carlo noise:

* ``jacobian_check``: the unitary-conjugation change of variables at a
  fixed triangular point has |det J| = prod_{i<j} |t_jj - t_ii|^2.
* ``log_cn_constant``: the closed-form normalization prefactor of the
  triangular density.
* ``kostlan_radial_check``: for the Gaussian ensemble the squared
  eigenvalue radii, pooled over the spectrum, follow an equal-weight
  mixture of Gamma(k, 1/n) laws, k = 1..n.
* ``rejection_sample_2x2`` and ``oracle_compare_2x2``: an exact
  rejection sampler for the n = 2 triangular density under any
  potential, used as an independent cross-check of the MCMC chains.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .model import TriangularModel
from .potentials import PotentialSpec, potential_value
from .stats import ks_distance, ks_two_sample, mean_z_score

JACOBIAN_TOLERANCE = 1e-10
REJECTION_MARGIN = 2.0
REJECTION_PILOT = 2000
REJECTION_BATCH = 20000
REJECTION_MIN_ACCEPTANCE = 1e-4


def lower_pair_order(n: int) -> list[tuple[int, int]]:
    """Strictly-lower index pairs (i, j), i > j, ordered so the
    conjugation map is block lower triangular: i descending, then j
    ascending.  For n = 3: (2,0), (2,1), (1,0)."""
    return [(i, j) for i in range(n - 1, 0, -1) for j in range(i)]


def jacobian_matrix(t: TriangularModel) -> np.ndarray:
    """Real matrix of the map from anti-Hermitian generator coordinates
    to the strictly lower part of the commutator [S, T].

    Source coordinates are (Re s_ij, Im s_ij) over the lower pairs; the
    two basis generators of pair (i, j) are E_ij - E_ji and
    i (E_ij + E_ji).  Image coordinates are (Re, Im) of the strictly
    lower entries of [S, T] in the same pair order.
    """
    n = t.n
    dense = t.to_dense()
    pairs = lower_pair_order(n)
    m = len(pairs)
    jac = np.empty((2 * m, 2 * m), dtype=np.float64)
    for col_pair, (a, b) in enumerate(pairs):
        for direction in range(2):
            s = np.zeros((n, n), dtype=np.complex128)
            if direction == 0:
                s[a, b] = 1.0
                s[b, a] = -1.0
            else:
                s[a, b] = 1.0j
                s[b, a] = 1.0j
            comm = s @ dense - dense @ s
            col = np.empty(2 * m, dtype=np.float64)
            for row_pair, (i, j) in enumerate(pairs):
                col[2 * row_pair] = comm[i, j].real
                col[2 * row_pair + 1] = comm[i, j].imag
            jac[:, 2 * col_pair + direction] = col
    return jac


@dataclass(frozen=True)
class JacobianReport:
    n: int
    det_abs: float
    predicted: float
    rel_error: float
    block_structure_ok: bool
    passed: bool


def jacobian_check(t: TriangularModel, tol: float = JACOBIAN_TOLERANCE) -> JacobianReport:
    """Compare |det J| against prod_{i<j} |t_jj - t_ii|^2.

    The comparison runs in log space (so rel_error is exactly
    |det_abs - predicted| / predicted without overflow) and also
    verifies that every 2 x 2 block above the pair-order diagonal
    vanishes identically.
    """
    if t.n > 8:
        raise ValueError("dense determinant check is capped at n = 8")
    diag = t.diag()
    pairs = lower_pair_order(t.n)
    gaps = np.array([abs(diag[j] - diag[i]) for i, j in pairs])
    if np.any(gaps == 0.0):
        raise ValueError("coincident diagonal entries; the expected determinant is 0")
    log_expected = float(2.0 * np.sum(np.log(gaps)))
    jac = jacobian_matrix(t)
    sign, log_abs_det = np.linalg.slogdet(jac)
    if sign == 0.0:
        raise ValueError("singular conjugation map")
    rel_error = abs(math.expm1(log_abs_det - log_expected))
    m = len(pairs)
    if m > 1:
        blocks = jac.reshape(m, 2, m, 2)
        upper = np.triu_indices(m, k=1)
        block_ok = bool(np.all(blocks[upper[0], :, upper[1], :] == 0.0))
    else:
        block_ok = True
    return JacobianReport(
        t.n,
        float(np.exp(log_abs_det)),
        float(np.exp(log_expected)),
        rel_error,
        block_ok,
        rel_error <= tol and block_ok,
    )


def log_cn_constant(n: int) -> float:
    """log of the closed-form prefactor 1 / (pi^{(3n^2-n)/2} prod_{k<n} k!)."""
    if n < 1:
        raise ValueError("n must be positive")
    log_factorials = sum(math.lgamma(k + 1) for k in range(1, n))
    return -((3 * n * n - n) / 2.0) * math.log(math.pi) - log_factorials


def normalization_probe_1x1(p: PotentialSpec, upper: float = 60.0) -> float:
    """C_1 times the 1 x 1 partition function, which must equal the
    Gaussian-reference mass: exactly 1 for V(x) = x.

    The complex integral of exp(-V(|t|^2)) reduces to
    pi * int_0^inf exp(-V(u)) du.
    """
    from scipy.integrate import quad

    integral, _ = quad(lambda u: math.exp(-potential_value(p, u)), 0.0, upper)
    return math.exp(log_cn_constant(1)) * math.pi * integral


def kostlan_mixture_cdf(n: int):
    """CDF of n |lambda|^2 for a uniformly chosen Gaussian-ensemble
    eigenvalue: equal mixture of Gamma(k, 1) over k = 1..n."""
    ks = np.arange(1, n + 1, dtype=np.float64)

    def cdf(x):
        x = np.asarray(x, dtype=np.float64)
        return gammainc(ks, x[..., None]).mean(axis=-1)

    return cdf


@dataclass(frozen=True)
class KostlanReport:
    n: int
    n_pooled: int
    ks: float


def kostlan_radial_check(diags) -> KostlanReport:
    """KS distance of pooled n |lambda_i|^2 from the Gamma-mixture law."""
    diags = [np.asarray(d, dtype=np.complex128) for d in diags]
    n = len(diags[0])
    if any(len(d) != n for d in diags):
        raise ValueError("mixed matrix sizes")
    pooled = np.concatenate([n * np.abs(d) ** 2 for d in diags])
    return KostlanReport(n, len(pooled), ks_distance(pooled, kostlan_mixture_cdf(n)))


def _log_target_2x2(t11, t22, t12, p: PotentialSpec):
    """log of |t22 - t11|^2 exp(-2 Tr V(T* T)) for upper triangular
    T = [[t11, t12], [0, t22]], via the closed-form 2 x 2 spectrum of
    H = T* T (trace |t11|^2 + |t12|^2 + |t22|^2, determinant
    |t11 t22|^2)."""
    tr = np.abs(t11) ** 2 + np.abs(t12) ** 2 + np.abs(t22) ** 2
    det = (np.abs(t11) * np.abs(t22)) ** 2
    disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
    mu_hi = 0.5 * (tr + disc)
    mu_lo = 0.5 * (tr - disc)
    trace_v = potential_value(p, mu_hi) + potential_value(p, mu_lo)
    gap2 = np.abs(t22 - t11) ** 2
    with np.errstate(divide="ignore"):
        return np.log(gap2) - 2.0 * trace_v


@dataclass(frozen=True)
class Rejection2x2:
    t11: np.ndarray
    t22: np.ndarray
    t12: np.ndarray
    acceptance: float
    log_bound: float
    n_proposed: int

    def models(self) -> list[TriangularModel]:
        return [
            TriangularModel(2, np.array([a, b, d], dtype=np.complex128))
            for a, b, d in zip(self.t11, self.t12, self.t22)
        ]


def _standard_complex(rng: np.random.Generator, size) -> np.ndarray:
    g = rng.standard_normal((2,) + tuple(np.atleast_1d(size)))
    return (g[0] + 1j * g[1]) / np.sqrt(2.0)


def rejection_sample_2x2(
    p: PotentialSpec, n_samples: int, rng: np.random.Generator
) -> Rejection2x2:
    """Exact sampler of the n = 2 triangular density by rejection from
    three iid standard complex Gaussians.

    The bound is calibrated on a pilot batch plus a safety margin; a
    proposal beating the bound restarts the accumulation with the bound
    raised, so accepted output is always drawn from the exact law.
    """

    def log_ratio(t11, t22, t12):
        gauss = np.abs(t11) ** 2 + np.abs(t22) ** 2 + np.abs(t12) ** 2
        return _log_target_2x2(t11, t22, t12, p) + gauss

    pilot = [_standard_complex(rng, REJECTION_PILOT) for _ in range(3)]
    log_bound = float(np.max(log_ratio(*pilot))) + REJECTION_MARGIN
    while True:
        kept: list[np.ndarray] = []
        n_kept = 0
        n_proposed = 0
        restart = False
        while n_kept < n_samples:
            t11, t22, t12 = (_standard_complex(rng, REJECTION_BATCH) for _ in range(3))
            lr = log_ratio(t11, t22, t12)
            if np.max(lr) > log_bound:
                log_bound = float(np.max(lr)) + REJECTION_MARGIN
                restart = True
                break
            accept = np.log(rng.uniform(size=REJECTION_BATCH)) < lr - log_bound
            kept.append(np.stack([t11[accept], t22[accept], t12[accept]]))
            n_kept += int(np.sum(accept))
            n_proposed += REJECTION_BATCH
            if n_proposed >= 10 * REJECTION_BATCH and n_kept < max(
                1, REJECTION_MIN_ACCEPTANCE * n_proposed
            ):
                warnings.warn(
                    f"rejection acceptance below {REJECTION_MIN_ACCEPTANCE:g}; "
                    "the proposal is a poor match for this potential",
                    stacklevel=2,
                )
        if restart:
            continue
        merged = np.concatenate(kept, axis=1)[:, :n_samples]
        return Rejection2x2(
            merged[0], merged[1], merged[2], n_samples / n_proposed, log_bound, n_proposed
        )


@dataclass(frozen=True)
class OracleCompare2x2:
    """MCMC vs rejection-oracle agreement for the n = 2 density."""

    mean_y_z: float
    trace_second_z: float
    gap_ks: float
    gap_ks_threshold: float
    passed: bool


def oracle_compare_2x2(
    mcmc_samples, oracle: Rejection2x2, z_threshold: float = 3.0
) -> OracleCompare2x2:
    """Three-way agreement check: mean Y = 2 E|t12|^2, the second moment
    of the diagonal, and the full eigenvalue-gap distribution (KS at the
    matching 3-sigma critical value)."""
    from .stats import ks_two_sample_critical

    t11 = np.array([t.entry(0, 0) for t in mcmc_samples])
    t12 = np.array([t.entry(0, 1) for t in mcmc_samples])
    t22 = np.array([t.entry(1, 1) for t in mcmc_samples])
    y_m = 2.0 * np.abs(t12) ** 2
    y_o = 2.0 * np.abs(oracle.t12) ** 2
    tr_m = np.abs(t11) ** 2 + np.abs(t22) ** 2
    tr_o = np.abs(oracle.t11) ** 2 + np.abs(oracle.t22) ** 2
    gap_m = np.abs(t22 - t11)
    gap_o = np.abs(oracle.t22 - oracle.t11)
    mean_y_z = mean_z_score(y_m, y_o)
    trace_z = mean_z_score(tr_m, tr_o)
    gap_ks = ks_two_sample(gap_m, gap_o)
    threshold = ks_two_sample_critical(len(gap_m), len(gap_o))
    passed = mean_y_z <= z_threshold and trace_z <= z_threshold and gap_ks <= threshold
    return OracleCompare2x2(mean_y_z, trace_z, gap_ks, threshold, passed)
