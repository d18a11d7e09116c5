"""Eigenvectors of triangular matrices by back-substitution, and overlaps.

The right eigenvector for the i-th diagonal entry of an upper-triangular
T is supported on components 0..i, normalized so component i equals 1:

    x_i(i) = 1,
    x_i(l) = ( sum_{m=l+1}^{i} t_{l m} x_i(m) ) / (t_ii - t_ll),

computed descending l = i-1, ..., 0.  Unit eigenvectors carry a free
phase; overlaps take the two phases explicitly so phase-randomized
statistics can be formed without touching T itself.

The overlap statistic for an eigenvalue pair,

    Y = n |l' - l|^2 / (|<v, v'>|^{-2} - 1),

is exactly exponentially distributed for the Gaussian ensemble and
exponentially tight in general.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import TriangularModel

# Eigenvalue gaps below this make the back-substitution division unstable.
DEGENERATE_GAP = 1e-12


class DegenerateGapError(ValueError):
    """Two diagonal entries are too close to divide by their gap."""


@dataclass(frozen=True)
class EigenvectorSlice:
    """Unnormalized eigenvector for diagonal position ``index``.

    ``components`` has length index + 1 (support on rows 0..index) with
    components[index] == 1.
    """

    index: int
    components: np.ndarray
    norm: float


@dataclass(frozen=True)
class OverlapRecord:
    """One eigenvalue pair with its unit-eigenvector overlap and Y statistic."""

    lam: complex
    lam_prime: complex
    overlap: complex
    y: float
    n: int
    sample_id: int = -1


def back_substitute(t: TriangularModel, i: int) -> EigenvectorSlice:
    """Eigenvector slice for diagonal position i (0-based).

    Raises DegenerateGapError when |t_ii - t_ll| < DEGENERATE_GAP for
    some l < i.
    """
    if not 0 <= i < t.n:
        raise IndexError(f"index {i} out of range for n={t.n}")
    dense = t.to_dense()
    lam = dense[i, i]
    x = np.zeros(i + 1, dtype=np.complex128)
    x[i] = 1.0
    for ell in range(i - 1, -1, -1):
        gap = lam - dense[ell, ell]
        if abs(gap) < DEGENERATE_GAP:
            raise DegenerateGapError(
                f"gap |t_{i}{i} - t_{ell}{ell}| = {abs(gap):.3g} below {DEGENERATE_GAP}"
            )
        x[ell] = np.dot(dense[ell, ell + 1 : i + 1], x[ell + 1 : i + 1]) / gap
    return EigenvectorSlice(i, x, float(np.linalg.norm(x)))


def eigenvector_matrix(t: TriangularModel) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvector slices at once: unit-diagonal upper-triangular X.

    Column i of X is the padded eigenvector x_i; the second return value
    holds the column norms.  Equivalent to stacking back_substitute over
    every index, but computed row-by-row so the inner products vectorize.
    """
    dense = t.to_dense()
    n = t.n
    diag = np.diagonal(dense)
    if n > 1:
        iu, ju = np.triu_indices(n, k=1)
        if np.min(np.abs(diag[ju] - diag[iu])) < DEGENERATE_GAP:
            raise DegenerateGapError("some eigenvalue gap is below the cutoff")
    x = np.eye(n, dtype=np.complex128)
    for ell in range(n - 2, -1, -1):
        # numer[i] = sum_{m > ell} t_{ell m} x_i(m) for every column i > ell
        numer = dense[ell, ell + 1 :] @ x[ell + 1 :, ell + 1 :]
        x[ell, ell + 1 :] = numer / (diag[ell + 1 :] - diag[ell])
    return x, np.linalg.norm(x, axis=0)


def overlap(
    t: TriangularModel, i: int, j: int, theta_i: float = 0.0, theta_j: float = 0.0
) -> complex:
    """Inner product <w_i, w_j> of the unit eigenvectors at positions i < j.

    With x_i, x_j the back-substituted slices,

        <w_i, w_j> = e^{i(theta_j - theta_i)} / (|x_i| |x_j|)
                     * sum_{l<=i} conj(x_i(l)) x_j(l).
    """
    if not i < j:
        raise ValueError(f"overlap requires i < j, got ({i}, {j})")
    xi = back_substitute(t, i)
    xj = back_substitute(t, j)
    inner = np.vdot(xi.components, xj.components[: i + 1])
    return complex(np.exp(1j * (theta_j - theta_i)) * inner / (xi.norm * xj.norm))


def pair_overlap(
    t: TriangularModel, i: int, j: int, theta_i: float = 0.0, theta_j: float = 0.0
) -> complex:
    """<w_i, w_j> for arbitrary distinct positions (conjugate of the swap)."""
    if i == j:
        raise ValueError("need two distinct positions")
    if i < j:
        return overlap(t, i, j, theta_i, theta_j)
    return complex(np.conj(overlap(t, j, i, theta_j, theta_i)))


def overlap_gram(t: TriangularModel) -> np.ndarray:
    """Gram matrix of all unit eigenvectors at zero phases.

    G[i, j] = <w_i, w_j>; the strict upper triangle matches ``overlap``
    pair by pair.
    """
    x, norms = eigenvector_matrix(t)
    g = x.conj().T @ x
    g /= np.outer(norms, norms)
    return g


def y_statistic(lam: complex, lam_prime: complex, overlap_value, n: int) -> OverlapRecord:
    """Build the OverlapRecord for one eigenvalue pair.

    Only the modulus of ``overlap_value`` enters Y; the full complex
    value is stored.  A zero overlap gives Y = 0; a modulus at or above 1
    (parallel vectors, impossible for distinct eigenvalues except in the
    degenerate limit) gives the +inf sentinel.
    """
    o = abs(overlap_value)
    if o > 1.0 + 1e-9:
        raise ValueError(f"|overlap| = {o} exceeds 1")
    if o == 0.0:
        y = 0.0
    else:
        denom = 1.0 / o**2 - 1.0
        gap2 = abs(lam_prime - lam) ** 2
        y = np.inf if denom <= 0.0 else n * gap2 / denom
    return OverlapRecord(complex(lam), complex(lam_prime), complex(overlap_value), float(y), n)


def y_from_gram(t: TriangularModel, gram: np.ndarray) -> np.ndarray:
    """Y values for every pair i < j from a precomputed Gram matrix (flat, row-major)."""
    diag = t.diag()
    iu, ju = np.triu_indices(t.n, k=1)
    o2 = np.abs(gram[iu, ju]) ** 2
    gap2 = np.abs(diag[ju] - diag[iu]) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        y = t.n * gap2 * o2 / (1.0 - o2)
    y[o2 == 0.0] = 0.0
    y[o2 >= 1.0] = np.inf
    return y


@dataclass(frozen=True)
class MagnitudeReport:
    """Proof-scale diagnostics per eigenvector; recorded, never asserted.

    scaled_component_max[q] = max_{l < i} |x_i(l)| sqrt(n) |t_ii - t_ll|,
    norm_excess[q] = |x_i| - 1, for i = indices[q].
    """

    indices: tuple[int, ...]
    scaled_component_max: np.ndarray
    norm_excess: np.ndarray


def magnitude_diagnostics(t: TriangularModel, indices) -> MagnitudeReport:
    """Sizes of the back-substitution components against the scales a proof wants."""
    diag = t.diag()
    sqrt_n = np.sqrt(t.n)
    comp_max = []
    excess = []
    for i in indices:
        sl = back_substitute(t, i)
        if i == 0:
            comp_max.append(0.0)
        else:
            gaps = np.abs(diag[i] - diag[:i])
            comp_max.append(float(np.max(np.abs(sl.components[:i]) * sqrt_n * gaps)))
        excess.append(sl.norm - 1.0)
    return MagnitudeReport(
        tuple(int(i) for i in indices),
        np.asarray(comp_max, dtype=np.float64),
        np.asarray(excess, dtype=np.float64),
    )


def eigen_residual(t: TriangularModel, sl: EigenvectorSlice) -> float:
    """Relative residual |(T - lam I) x| / |x| for a padded eigenvector slice."""
    dense = t.to_dense()
    x = np.zeros(t.n, dtype=np.complex128)
    x[: sl.index + 1] = sl.components
    r = dense @ x - dense[sl.index, sl.index] * x
    return float(np.linalg.norm(r) / sl.norm)
