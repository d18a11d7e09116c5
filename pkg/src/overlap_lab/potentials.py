"""Polynomial confining potentials and their matrix functionals.

A potential is V(x) = sum_m c_m x^m (m >= 1) acting on the squared
singular values of a matrix: the sampled density is proportional to
exp(-n Tr V(T* T)).  The strong-convexity margin alpha states that
x -> V(x^2) - (alpha/2) x^2 is convex on [0, inf); the exponential tail
bound for the overlap statistic decays at rate alpha/2.

Matrix traces and gradients are evaluated through explicit powers of the
Hermitian product T* T, never through a dense eigensolve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .model import TriangularModel

# Additive slack for the midpoint convexity test; floating-point noise on
# the chord/midpoint comparison sits orders of magnitude below this.
CONVEXITY_SLACK = 1e-10


@dataclass(frozen=True)
class PotentialSpec:
    """Coefficients (c_1, ..., c_m) of V(x) = sum c_m x^m plus the margin alpha."""

    coefficients: tuple[float, ...]
    alpha: float

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) == 0:
            raise ValueError("potential needs at least one coefficient")
        if not all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def to_json_dict(self) -> dict:
        return {"coefficients": list(self.coefficients), "alpha": self.alpha}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PotentialSpec":
        return cls(tuple(obj["coefficients"]), float(obj["alpha"]))


def ginibre_potential(alpha: float = 2.0) -> PotentialSpec:
    """V(x) = x; alpha = 2 is the largest margin that keeps x^2(1 - alpha/2) convex."""
    return PotentialSpec((1.0,), alpha)


def quartic_quintic_potential(alpha: float = 2.0) -> PotentialSpec:
    """V(x) = x + x^4/4 + x^5/5, the non-Gaussian reference potential."""
    return PotentialSpec((1.0, 0.0, 0.0, 0.25, 0.2), alpha)


def potential_value(p: PotentialSpec, x):
    """V(x), elementwise over x."""
    return npoly.polyval(x, np.concatenate(([0.0], p.coefficients)))


def potential_derivative(p: PotentialSpec, x):
    """V'(x), elementwise over x."""
    dcoef = np.arange(1, p.degree + 1) * np.asarray(p.coefficients)
    return npoly.polyval(x, dcoef)


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of the midpoint convexity probe for V(x^2) - (alpha/2) x^2."""

    passed: bool
    worst_margin: float
    violation: tuple[float, float, float, float] | None
    # violation = (x, y, value at midpoint, chord value) for the first failing pair


def default_probe_grid() -> np.ndarray:
    return np.arange(0.0, 3.0 + 1e-12, 0.05)


def convexity_probe(p: PotentialSpec, grid=None) -> ConvexityReport:
    """Midpoint convexity test of g(x) = V(x^2) - (alpha/2) x^2 over all grid pairs.

    For every pair (x, y) of grid points the probe requires
    g((x+y)/2) <= (g(x) + g(y))/2 + slack.  Returns a report with the
    first violating pair; never raises on failure.
    """
    x = default_probe_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("grid must contain at least two points")

    def g(v):
        return potential_value(p, v**2) - 0.5 * p.alpha * v**2

    gx = g(x)
    mid = g(0.5 * (x[:, None] + x[None, :]))
    chord = 0.5 * (gx[:, None] + gx[None, :])
    margin = mid - chord
    iu = np.triu_indices(len(x), k=1)
    margins = margin[iu]
    worst = float(np.max(margins))
    if worst <= CONVEXITY_SLACK:
        return ConvexityReport(True, worst, None)
    bad = np.flatnonzero(margins > CONVEXITY_SLACK)[0]
    i, j = iu[0][bad], iu[1][bad]
    xi, xj = float(x[i]), float(x[j])
    return ConvexityReport(
        False, worst, (xi, xj, float(g(0.5 * (xi + xj))), float(0.5 * (gx[i] + gx[j])))
    )


def _as_dense(t) -> np.ndarray:
    if isinstance(t, TriangularModel):
        return t.to_dense()
    return np.asarray(t, dtype=np.complex128)


def trace_potential_with_grad(dense: np.ndarray, p: PotentialSpec):
    """Fused kernel: Tr V(T*T) and the matrix T V'(T*T) from one set of powers.

    The gradient matrix is the Wirtinger derivative of Tr V(T*T) with
    respect to conj(t_ab); callers that differentiate with respect to the
    real coordinates (Re t, Im t) must apply the factor-2 convention.
    """
    h = dense.conj().T @ dense
    n = h.shape[0]
    coeffs = p.coefficients
    deg = len(coeffs)
    # power holds h^(m-1) while degree m is processed
    power = np.eye(n, dtype=np.complex128)
    trace = 0.0
    vprime = np.zeros_like(h)
    for m, c in enumerate(coeffs, start=1):
        if c != 0.0:
            vprime += (m * c) * power
            if m == deg:
                # Tr h^deg = <h, h^(deg-1)> without forming the last power
                trace += c * float(np.vdot(h, power).real)
        if m < deg:
            power = h if m == 1 else power @ h
            if c != 0.0:
                trace += c * float(np.trace(power).real)
    return trace, dense @ vprime


def trace_potential(t, p: PotentialSpec) -> float:
    """Tr V(T*T), evaluated via matrix powers of the Hermitian product T*T."""
    trace, _ = trace_potential_with_grad(_as_dense(t), p)
    return trace


def trace_potential_grad(t, p: PotentialSpec) -> TriangularModel:
    """Wirtinger gradient d/d conj(t_ab) of Tr V(T*T), on the stored triangle.

    The unrestricted derivative matrix is T V'(T*T); only its upper
    triangle corresponds to stored coordinates, so the result is returned
    as a TriangularModel of the same size.
    """
    _, grad = trace_potential_with_grad(_as_dense(t), p)
    return TriangularModel.from_dense(np.triu(grad), tol=np.inf)
