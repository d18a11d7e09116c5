"""Metropolis-adjusted Langevin samplers for the triangular-matrix law.

Two samplers share one MALA core over complex coordinate vectors:

* ``sample_ginibre``: for V(x) = x the off-diagonal entries are exactly
  iid complex Gaussians of variance 1/n, independent of the diagonal, so
  only the diagonal runs through MALA (the planar log-gas
  2 sum log|l_i - l_j| - n sum |l_i|^2); off-diagonals are drawn fresh
  at each emission.
* ``sample_general``: every packed entry is a MALA coordinate and the
  target is the full log-density with an arbitrary polynomial potential.

The MALA proposal treats a complex vector z as the real pair
(Re z, Im z).  With W(z) the Wirtinger gradient d log pi / d conj(z),
the real-coordinate gradient is 2W, so

    z' = z + h^2 W(z) + h zeta,   zeta ~ iid standard normal re/im parts,

followed by the Metropolis-Hastings correction.  The step size is tuned
during burn-in toward acceptance 0.574 and frozen afterwards.

Symmetry: the sampled density omits the ordering indicator (it is
permutation-symmetric in the diagonal); admissible orderings are
recovered after the fact by the selection functions in ``triangular``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .model import TriangularModel, _triu_indices, packed_size
from .potentials import PotentialSpec
from .rng import chain_stream
from .triangular import COLLISION_CUTOFF, log_density_and_grad_dense

TARGET_ACCEPTANCE = 0.574
DIVERGENCE_FLOOR = 0.01


class DivergenceError(RuntimeError):
    """Acceptance collapsed during burn-in; the step size cannot recover."""


def default_step_size(n: int) -> float:
    """Burn-in starting step h = 0.7 n^(-3/4); tuning refines it."""
    return 0.7 * n ** (-0.75)


@dataclass(frozen=True)
class ChainConfig:
    """MALA chain schedule.

    ``n_steps`` counts every MALA step including burn-in; after burn-in
    each ``thinning``-th state is emitted, so a chain yields
    (n_steps - burn_in) // thinning samples.
    """

    n_steps: int
    burn_in: int
    thinning: int = 1
    step_size: float | None = None
    seed: int = 0
    n_chains: int = 1
    tune: bool = True

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be positive")
        if not 0 <= self.burn_in < self.n_steps:
            raise ValueError("need 0 <= burn_in < n_steps")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")
        if self.step_size is not None and not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.n_chains < 1:
            raise ValueError("n_chains must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def emissions_per_chain(self) -> int:
        return (self.n_steps - self.burn_in) // self.thinning

    @classmethod
    def for_emissions(
        cls,
        n_emissions: int,
        burn_in: int,
        thinning: int,
        seed: int = 0,
        n_chains: int = 1,
        step_size: float | None = None,
    ) -> "ChainConfig":
        """Schedule emitting at least ``n_emissions`` samples across all chains."""
        per_chain = -(-n_emissions // n_chains)
        return cls(
            n_steps=burn_in + thinning * per_chain,
            burn_in=burn_in,
            thinning=thinning,
            step_size=step_size,
            seed=seed,
            n_chains=n_chains,
        )

    def to_json_dict(self) -> dict:
        return {
            "n_steps": self.n_steps,
            "burn_in": self.burn_in,
            "thinning": self.thinning,
            "step_size": self.step_size,
            "seed": self.seed,
            "n_chains": self.n_chains,
            "tune": self.tune,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ChainConfig":
        return cls(
            n_steps=int(obj["n_steps"]),
            burn_in=int(obj["burn_in"]),
            thinning=int(obj["thinning"]),
            step_size=None if obj.get("step_size") is None else float(obj["step_size"]),
            seed=int(obj.get("seed", 0)),
            n_chains=int(obj.get("n_chains", 1)),
            tune=bool(obj.get("tune", True)),
        )


@dataclass(frozen=True)
class StepRecord:
    """One MALA transition; state_before/proposal kept only on request."""

    accepted: bool
    log_alpha: float
    acc_prob: float
    state_before: np.ndarray | None = None
    proposal: np.ndarray | None = None


@dataclass
class ChainDiagnostics:
    """Per-chain tuning and acceptance summary for manifests."""

    chain: int
    initial_step_size: float
    tuned_step_size: float
    burn_in_acceptance: float
    sampling_acceptance: float
    n_emitted: int

    def to_json_dict(self) -> dict:
        return {
            "chain": self.chain,
            "initial_step_size": self.initial_step_size,
            "tuned_step_size": self.tuned_step_size,
            "burn_in_acceptance": self.burn_in_acceptance,
            "sampling_acceptance": self.sampling_acceptance,
            "n_emitted": self.n_emitted,
        }


class MalaChain:
    """MALA over a complex coordinate vector with a Wirtinger-gradient target.

    ``target(z)`` must return (log pi(z), d log pi / d conj(z)); a
    -inf log-density marks a forbidden state (collision sentinel) and the
    proposal is rejected without using its gradient.
    """

    def __init__(
        self,
        state: np.ndarray,
        target: Callable[[np.ndarray], tuple[float, np.ndarray]],
        step_size: float,
        rng: np.random.Generator,
        keep_proposals: bool = False,
    ):
        self.state = np.asarray(state, dtype=np.complex128).copy()
        self.target = target
        self.h = float(step_size)
        self.rng = rng
        self.keep_proposals = keep_proposals
        self.logp, self.grad = target(self.state)
        if not np.isfinite(self.logp):
            raise ValueError("initial state has -inf log-density")

    def step(self, gamma: float = 0.0) -> StepRecord:
        """One proposal + accept/reject; gamma > 0 also nudges log h."""
        h = self.h
        dim = len(self.state)
        noise = self.rng.standard_normal((2, dim))
        zeta = noise[0] + 1j * noise[1]
        proposal = self.state + (h * h) * self.grad + h * zeta
        logp_prop, grad_prop = self.target(proposal)
        if np.isfinite(logp_prop):
            rev = self.state - proposal - (h * h) * grad_prop
            log_q_rev = -float(np.sum(np.abs(rev) ** 2)) / (2.0 * h * h)
            log_q_fwd = -0.5 * float(np.sum(noise**2))
            log_alpha = logp_prop - self.logp + log_q_rev - log_q_fwd
        else:
            log_alpha = -np.inf
        acc_prob = 1.0 if log_alpha >= 0 else float(np.exp(log_alpha))
        u = self.rng.uniform()
        accepted = bool(np.log(u) < log_alpha)
        before = self.state.copy() if self.keep_proposals else None
        if accepted:
            self.state = proposal
            self.logp, self.grad = logp_prop, grad_prop
        if gamma > 0.0:
            self.h = float(np.exp(np.log(self.h) + gamma * (acc_prob - TARGET_ACCEPTANCE)))
        return StepRecord(
            accepted,
            float(log_alpha),
            acc_prob,
            before,
            proposal if self.keep_proposals else None,
        )


def _run_schedule(
    chain: MalaChain, cfg: ChainConfig, emit: Callable[[np.ndarray], TriangularModel]
) -> Iterator[TriangularModel]:
    """Burn in (with tuning), then emit every thinning-th state; yields samples.

    The divergence guard looks at the mean acceptance probability over
    the second half of burn-in, after tuning has had time to act.
    """
    late_acc = 0.0
    late_count = 0
    for t in range(1, cfg.burn_in + 1):
        gamma = 0.3 * t ** (-0.6) if cfg.tune else 0.0
        rec = chain.step(gamma)
        if t > cfg.burn_in // 2:
            late_acc += rec.acc_prob
            late_count += 1
    chain.burn_in_acceptance = late_acc / late_count if late_count else float("nan")
    if late_count > 0 and chain.burn_in_acceptance < DIVERGENCE_FLOOR:
        raise DivergenceError(
            f"acceptance {chain.burn_in_acceptance:.4f} below {DIVERGENCE_FLOOR} "
            f"over the late burn-in (h = {chain.h:.3g})"
        )
    chain.sampling_accepts = 0
    chain.sampling_steps = 0
    for t in range(1, cfg.n_steps - cfg.burn_in + 1):
        rec = chain.step(0.0)
        chain.sampling_steps += 1
        chain.sampling_accepts += rec.accepted
        if t % cfg.thinning == 0:
            yield emit(chain.state)


def sunflower_lattice(n: int) -> np.ndarray:
    """n deterministic points filling the unit disk nearly uniformly.

    Radii sqrt((k - 1/2)/n) with successive golden-angle rotations; used
    to initialize the eigenvalue gas far from collisions.
    """
    k = np.arange(1, n + 1)
    golden_angle = np.pi * (3.0 - np.sqrt(5.0))
    return np.sqrt((k - 0.5) / n) * np.exp(1j * golden_angle * k)


@lru_cache(maxsize=64)
def _gas_pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, k=1)
    iu.setflags(write=False)
    ju.setflags(write=False)
    return iu, ju


def _gas_target(n: int) -> Callable[[np.ndarray], tuple[float, np.ndarray]]:
    """Log-density and Wirtinger gradient of the planar eigenvalue gas."""
    iu, ju = _gas_pair_indices(n)

    def target(lam: np.ndarray) -> tuple[float, np.ndarray]:
        d = lam[:, None] - lam[None, :]
        gaps = np.abs(d[iu, ju])
        if n > 1 and np.min(gaps) < COLLISION_CUTOFF:
            return -np.inf, np.zeros_like(lam)
        np.fill_diagonal(d, np.inf)
        logpdf = 2.0 * float(np.sum(np.log(gaps))) - n * float(np.sum(np.abs(lam) ** 2))
        grad = np.sum(1.0 / np.conj(d), axis=1) - n * lam
        return logpdf, grad

    return target


@lru_cache(maxsize=64)
def _offdiag_positions(n: int) -> np.ndarray:
    rows, cols = _triu_indices(n)
    pos = np.flatnonzero(rows != cols)
    pos.setflags(write=False)
    return pos


@lru_cache(maxsize=64)
def _diag_packed_positions(n: int) -> np.ndarray:
    rows, cols = _triu_indices(n)
    pos = np.flatnonzero(rows == cols)
    pos.setflags(write=False)
    return pos


def _ginibre_chain(n: int, cfg: ChainConfig, chain_idx: int):
    rng = chain_stream(cfg.seed, chain_idx)
    h0 = cfg.step_size if cfg.step_size is not None else default_step_size(n)
    chain = MalaChain(sunflower_lattice(n), _gas_target(n), h0, rng)
    diag_pos = _diag_packed_positions(n)
    off_pos = _offdiag_positions(n)
    m = len(off_pos)
    scale = 1.0 / np.sqrt(2.0 * n)

    def emit(lam: np.ndarray) -> TriangularModel:
        entries = np.zeros(packed_size(n), dtype=np.complex128)
        entries[diag_pos] = lam
        if m:
            g = rng.standard_normal((2, m))
            entries[off_pos] = scale * (g[0] + 1j * g[1])
        return TriangularModel(n, entries)

    return chain, _run_schedule(chain, cfg, emit), h0


def _general_chain(n: int, p: PotentialSpec, cfg: ChainConfig, chain_idx: int):
    rng = chain_stream(cfg.seed, chain_idx)
    h0 = cfg.step_size if cfg.step_size is not None else default_step_size(n)
    rows, cols = _triu_indices(n)
    dense = np.zeros((n, n), dtype=np.complex128)

    def target(packed: np.ndarray) -> tuple[float, np.ndarray]:
        dense[rows, cols] = packed
        logpdf, grad = log_density_and_grad_dense(dense, p)
        return logpdf, grad[rows, cols]

    state0 = np.zeros(packed_size(n), dtype=np.complex128)
    state0[_diag_packed_positions(n)] = sunflower_lattice(n)
    off = _offdiag_positions(n)
    if len(off):
        g = rng.standard_normal((2, len(off)))
        state0[off] = (g[0] + 1j * g[1]) / np.sqrt(2.0 * n)
    chain = MalaChain(state0, target, h0, rng)

    def emit(packed: np.ndarray) -> TriangularModel:
        return TriangularModel(n, packed.copy())

    return chain, _run_schedule(chain, cfg, emit), h0


def sample_ginibre(n: int, cfg: ChainConfig) -> Iterator[TriangularModel]:
    """Stream of Schur-form Ginibre samples (V(x) = x), chain after chain."""
    for c in range(cfg.n_chains):
        _, schedule, _ = _ginibre_chain(n, cfg, c)
        yield from schedule


def sample_general(n: int, p: PotentialSpec, cfg: ChainConfig) -> Iterator[TriangularModel]:
    """Stream of Schur-form samples for an arbitrary polynomial potential."""
    for c in range(cfg.n_chains):
        _, schedule, _ = _general_chain(n, p, cfg, c)
        yield from schedule


@dataclass
class SampleBatch:
    """Collected samples plus per-chain diagnostics, in chain order."""

    samples: list[TriangularModel] = field(default_factory=list)
    chains: list[ChainDiagnostics] = field(default_factory=list)


def worker_count(n_chains: int) -> int:
    """Worker cap from OVERLAP_LAB_THREADS (default 1, never above n_chains)."""
    raw = os.environ.get("OVERLAP_LAB_THREADS", "1")
    try:
        limit = max(1, int(raw))
    except ValueError:
        limit = 1
    return min(limit, n_chains)


def _collect(builder, cfg: ChainConfig) -> SampleBatch:
    def run_one(c: int) -> tuple[list[TriangularModel], ChainDiagnostics]:
        chain, schedule, h0 = builder(c)
        samples = list(schedule)
        acc = chain.sampling_accepts / max(1, chain.sampling_steps)
        burn_acc = getattr(chain, "burn_in_acceptance", float("nan"))
        diag = ChainDiagnostics(c, h0, chain.h, burn_acc, acc, len(samples))
        return samples, diag

    workers = worker_count(cfg.n_chains)
    batch = SampleBatch()
    if workers == 1:
        results = [run_one(c) for c in range(cfg.n_chains)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, range(cfg.n_chains)))
    for samples, diag in results:
        batch.samples.extend(samples)
        batch.chains.append(diag)
    return batch


def collect_ginibre(n: int, cfg: ChainConfig) -> SampleBatch:
    """All Ginibre emissions as a list, chains concatenated in index order."""
    return _collect(lambda c: _ginibre_chain(n, cfg, c), cfg)


def collect_general(n: int, p: PotentialSpec, cfg: ChainConfig) -> SampleBatch:
    """All general-potential emissions as a list, chains in index order."""
    return _collect(lambda c: _general_chain(n, p, cfg, c), cfg)
