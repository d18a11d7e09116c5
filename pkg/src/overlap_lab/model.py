"""Data model for upper-triangular matrix samples and probe configurations.

A matrix in Schur form is stored as its upper triangle only, packed
row-major into a flat complex vector: row i contributes the entries
(i, i), (i, i+1), ..., (i, n-1) in that order.  The diagonal holds the
eigenvalues; everything below the diagonal is identically zero and never
stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np


def packed_size(n: int) -> int:
    """Number of stored entries of an n x n upper triangle."""
    return n * (n + 1) // 2


@lru_cache(maxsize=64)
def _triu_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(n)
    rows.setflags(write=False)
    cols.setflags(write=False)
    return rows, cols


@lru_cache(maxsize=64)
def _diag_positions(n: int) -> np.ndarray:
    """Packed positions of the diagonal entries (i, i)."""
    i = np.arange(n)
    pos = i * n - i * (i - 1) // 2
    pos.setflags(write=False)
    return pos


def packed_index(n: int, i: int, j: int) -> int:
    """Flat position of entry (i, j), 0-based, requires i <= j < n."""
    if not 0 <= i <= j < n:
        raise IndexError(f"(i, j) = ({i}, {j}) is not in the upper triangle of size {n}")
    return i * n - i * (i - 1) // 2 + (j - i)


@dataclass(frozen=True, eq=False)
class TriangularModel:
    """Packed upper-triangular complex matrix with eigenvalues on the diagonal.

    Attributes:
        n: matrix dimension.
        entries: packed row-major upper triangle, length n(n+1)/2.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        entries = np.asarray(self.entries, dtype=np.complex128)
        if entries.shape != (packed_size(self.n),):
            raise ValueError(
                f"expected {packed_size(self.n)} packed entries for n={self.n}, "
                f"got shape {entries.shape}"
            )
        if not np.all(np.isfinite(entries.view(np.float64))):
            raise ValueError("entries must be finite")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_dense(cls, a: np.ndarray, tol: float = 0.0) -> "TriangularModel":
        """Pack a dense upper-triangular matrix; rejects sub-diagonal mass above tol."""
        a = np.asarray(a, dtype=np.complex128)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        lower = np.tril(a, k=-1)
        worst = float(np.max(np.abs(lower))) if n > 1 else 0.0
        if worst > tol:
            raise ValueError(f"matrix is not upper triangular: |lower| up to {worst:g}")
        rows, cols = _triu_indices(n)
        return cls(n, a[rows, cols])

    @classmethod
    def zeros(cls, n: int) -> "TriangularModel":
        return cls(n, np.zeros(packed_size(n), dtype=np.complex128))

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n), dtype=np.complex128)
        rows, cols = _triu_indices(self.n)
        dense[rows, cols] = self.entries
        return dense

    def diag(self) -> np.ndarray:
        """Eigenvalues, i.e. the diagonal entries, as a length-n vector."""
        return self.entries[_diag_positions(self.n)]

    def entry(self, i: int, j: int) -> complex:
        return complex(self.entries[packed_index(self.n, i, j)])

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "entries_re": self.entries.real.tolist(),
            "entries_im": self.entries.imag.tolist(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "TriangularModel":
        re = np.asarray(obj["entries_re"], dtype=np.float64)
        im = np.asarray(obj["entries_im"], dtype=np.float64)
        return cls(int(obj["n"]), re + 1j * im)


@dataclass(frozen=True)
class ProbeSet:
    """Probe points in the closed unit disk with a separation exponent.

    The separation requirement couples the probes to the matrix size: a
    probe set is usable at size n when sqrt(n) * min_{i<j} |z_i - z_j|
    >= n**epsilon, so the selected eigenvalues live at mesoscopic
    distance from each other.
    """

    probes: tuple[complex, ...]
    epsilon: float = 0.25

    def __post_init__(self):
        probes = tuple(complex(z) for z in self.probes)
        if len(probes) == 0:
            raise ValueError("need at least one probe")
        if not all(abs(z) <= 1.0 + 1e-12 for z in probes):
            bad = max(probes, key=abs)
            raise ValueError(f"probes must lie in the closed unit disk, got |{bad}| > 1")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must be in (0, 1/2), got {self.epsilon}")
        object.__setattr__(self, "probes", probes)

    @property
    def k(self) -> int:
        return len(self.probes)

    def min_pairwise_distance(self) -> float:
        z = np.asarray(self.probes)
        if len(z) < 2:
            return np.inf
        diff = z[:, None] - z[None, :]
        iu = np.triu_indices(len(z), k=1)
        return float(np.min(np.abs(diff[iu])))

    def separation_ok(self, n: int) -> bool:
        """True when sqrt(n) * min pairwise distance >= n**epsilon."""
        d = self.min_pairwise_distance()
        return bool(np.sqrt(n) * d >= n**self.epsilon)

    def require_separation(self, n: int) -> None:
        if not self.separation_ok(n):
            raise ValueError(
                f"probe set violates separation at n={n}: "
                f"sqrt(n)*min_dist = {np.sqrt(n) * self.min_pairwise_distance():.3g} "
                f"< n**eps = {n**self.epsilon:.3g}"
            )

    def to_json_dict(self) -> dict:
        return {
            "probes_re": [z.real for z in self.probes],
            "probes_im": [z.imag for z in self.probes],
            "epsilon": self.epsilon,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ProbeSet":
        probes = tuple(
            complex(re, im) for re, im in zip(obj["probes_re"], obj["probes_im"])
        )
        return cls(probes, float(obj.get("epsilon", 0.25)))
