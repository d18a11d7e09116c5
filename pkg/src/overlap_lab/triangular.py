"""Log-density, gradients, and eigenvalue ordering for Schur-form samples.

The sampled law on packed upper triangles is

    log pi(T) = 2 sum_{i<j} log|t_jj - t_ii|  -  n Tr V(T* T),

the squared Vandermonde of the diagonal times the potential weight.  The
symmetry-breaking indicator that pins a unique diagonal ordering is not
part of the sampled density; orderings are recovered afterwards with
``admissible_order`` / ``select_nearest``.

Gradients follow the Wirtinger convention: ``grad_log_density`` returns
d log pi / d conj(t_ab).  The gradient with respect to the real
coordinates (Re t, Im t) is twice the real and imaginary parts of that
matrix; samplers apply the factor 2.
"""

from __future__ import annotations

import numpy as np

from .model import TriangularModel, _triu_indices
from .potentials import PotentialSpec, trace_potential, trace_potential_with_grad

# |t_ii - t_jj| below this counts as an eigenvalue collision: the squared
# Vandermonde underflows and the log-density is -inf.
COLLISION_CUTOFF = 1e-300

# Two candidate eigenvalues equidistant from a probe within this tolerance
# make the selection ill-posed.
TIE_TOLERANCE = 1e-14


def log_vandermonde(diag: np.ndarray) -> float:
    """2 sum_{i<j} log|t_jj - t_ii|; -inf on a collision below the cutoff."""
    diag = np.asarray(diag, dtype=np.complex128)
    n = len(diag)
    if n < 2:
        return 0.0
    iu, ju = np.triu_indices(n, k=1)
    gaps = np.abs(diag[ju] - diag[iu])
    if np.min(gaps) < COLLISION_CUTOFF:
        return -np.inf
    return float(2.0 * np.sum(np.log(gaps)))


def log_density(t: TriangularModel, p: PotentialSpec) -> float:
    """log of the unnormalized sampled density of T."""
    return log_vandermonde(t.diag()) - t.n * trace_potential(t, p)


def _vandermonde_grad(diag: np.ndarray) -> np.ndarray:
    """Wirtinger gradient of log|Vandermonde|^2: sum_{i != a} 1/conj(l_a - l_i)."""
    d = diag[:, None] - diag[None, :]
    np.fill_diagonal(d, np.inf)
    return np.sum(1.0 / np.conj(d), axis=1)


def log_density_and_grad_dense(
    dense: np.ndarray, p: PotentialSpec
) -> tuple[float, np.ndarray]:
    """Fused log-density and Wirtinger gradient on a dense upper triangle.

    This is the sampler hot path; the returned gradient matrix is dense
    with its strictly-lower part zeroed.
    """
    n = dense.shape[0]
    diag = np.diagonal(dense)
    lv = log_vandermonde(diag)
    trace, tvp = trace_potential_with_grad(dense, p)
    grad = np.triu(-n * tvp)
    if np.isfinite(lv):
        grad[np.arange(n), np.arange(n)] += _vandermonde_grad(diag)
    return lv - n * trace, grad


def grad_log_density(t: TriangularModel, p: PotentialSpec) -> TriangularModel:
    """Wirtinger gradient d log pi / d conj(t_ab) on the stored triangle."""
    _, grad = log_density_and_grad_dense(t.to_dense(), p)
    return TriangularModel.from_dense(grad, tol=np.inf)


def _pad_probes(probes, n: int) -> np.ndarray:
    z = np.asarray([complex(w) for w in probes], dtype=np.complex128)
    if len(z) == 0:
        raise ValueError("need at least one probe")
    if len(z) > n:
        raise ValueError(f"{len(z)} probes for only {n} eigenvalues")
    if len(z) < n:
        z = np.concatenate([z, np.full(n - len(z), z[-1])])
    return z


def admissible_order(probes, diag: np.ndarray) -> np.ndarray:
    """Unique permutation placing the diagonal in the admissible region of the probes.

    Position q receives the remaining eigenvalue strictly closest to
    probe z_q; fewer than n probes are padded by repeating the last one.
    Returns ``perm`` with ``diag[perm[q]]`` the eigenvalue at ordered
    position q.  Raises ValueError when a proximity tie (within
    TIE_TOLERANCE) makes the order ambiguous.
    """
    diag = np.asarray(diag, dtype=np.complex128)
    n = len(diag)
    z = _pad_probes(probes, n)
    perm = np.empty(n, dtype=np.int64)
    dist = np.abs(diag[None, :] - z[:, None])
    taken = np.zeros(n, dtype=bool)
    for q in range(n):
        d = np.where(taken, np.inf, dist[q])
        order = np.argsort(d)
        if n - q >= 2 and d[order[1]] - d[order[0]] < TIE_TOLERANCE:
            raise ValueError(
                f"ambiguous admissible order: eigenvalues {order[0]} and {order[1]} "
                f"are equidistant from probe {z[q]} within {TIE_TOLERANCE}"
            )
        perm[q] = order[0]
        taken[order[0]] = True
    return perm


def select_nearest(z: complex, diag: np.ndarray, exclude=None) -> int:
    """Index of the eigenvalue closest to z, optionally excluding some indices.

    ``exclude`` is a single index or an iterable of indices.  Raises
    ValueError when the two nearest remaining candidates are equidistant
    within TIE_TOLERANCE, or when every index is excluded.
    """
    diag = np.asarray(diag, dtype=np.complex128)
    d = np.abs(diag - complex(z))
    if exclude is not None:
        idx = [exclude] if np.isscalar(exclude) else list(exclude)
        d = d.copy()
        d[np.asarray(idx, dtype=np.int64)] = np.inf
    order = np.argsort(d)
    if not np.isfinite(d[order[0]]):
        raise ValueError("all eigenvalues excluded")
    if len(d) >= 2 and np.isfinite(d[order[1]]) and d[order[1]] - d[order[0]] < TIE_TOLERANCE:
        raise ValueError(
            f"proximity tie at probe {z}: eigenvalues {order[0]} and {order[1]} "
            f"are equidistant within {TIE_TOLERANCE}"
        )
    return int(order[0])


def apply_phases(t: TriangularModel, thetas: np.ndarray) -> TriangularModel:
    """Gauge transform T -> D T D* with D = diag(e^{i theta}).

    Leaves the diagonal and the sampled density invariant; rotates entry
    (i, j) by e^{i(theta_i - theta_j)}.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    if thetas.shape != (t.n,):
        raise ValueError(f"expected {t.n} phases, got shape {thetas.shape}")
    rows, cols = _triu_indices(t.n)
    factors = np.exp(1j * (thetas[rows] - thetas[cols]))
    return TriangularModel(t.n, t.entries * factors)
