"""Experiment configuration: one declarative object per run.

Every run is determined by an ExperimentConfig plus nothing else; the
config serializes to JSON and round-trips bit-exactly (complex scalars
as [re, im] pairs), which is what makes the manifest's content hash
meaningful.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .model import ProbeSet
from .potentials import PotentialSpec, ginibre_potential, quartic_quintic_potential
from .samplers import ChainConfig, default_step_size

KINDS = (
    "sample",
    "tail",
    "exp1",
    "gaussian_array",
    "figure1",
    "local_law",
    "validate_jacobian",
    "validate_cn",
    "validate_kostlan",
    "validate_oracle2",
)

POTENTIAL_NAMES = {
    "ginibre": ginibre_potential,
    "quartic-quintic": quartic_quintic_potential,
}


def potential_from_text(text: str, alpha: float | None = None) -> PotentialSpec:
    """Parse a potential given as a registered name or an inline JSON object."""
    if text in POTENTIAL_NAMES:
        p = POTENTIAL_NAMES[text]()
        return replace(p, alpha=alpha) if alpha is not None else p
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        names = ", ".join(sorted(POTENTIAL_NAMES))
        raise ValueError(f"potential must be one of {names} or a JSON object: {e}") from e
    p = PotentialSpec.from_json_dict(obj)
    return replace(p, alpha=alpha) if alpha is not None else p


def _complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _complex_from_json(v) -> complex:
    re, im = v
    return complex(float(re), float(im))


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one run; field meanings vary by ``kind``.

    ``z``/``z_prime`` are the probe pair (tail, exp1, local_law);
    ``probes`` is the probe set of the Gaussian-array experiment;
    ``s``/``z0`` parametrize the shrinking-disk count; ``chain`` of
    None means the runner picks a conservative schedule for (kind, n).
    """

    kind: str
    n: int
    potential: PotentialSpec = field(default_factory=ginibre_potential)
    reps: int = 100
    seed: int = 0
    z: complex = 0.0
    z_prime: complex = 0.3
    probes: ProbeSet | None = None
    s: float = 0.3
    z0: complex = 0.0
    rescale: bool | None = None
    chain: ChainConfig | None = None
    output_dir: str | None = None
    save_samples: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"reps must be positive, got {self.reps}")
        if not 0.0 < self.s < 0.5:
            raise ValueError(f"s must be in (0, 1/2), got {self.s}")
        if self.kind == "gaussian_array" and self.probes is None:
            raise ValueError("gaussian_array needs probes")

    @property
    def is_ginibre(self) -> bool:
        return self.potential.coefficients == (1.0,)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "potential": self.potential.to_json_dict(),
            "reps": self.reps,
            "seed": self.seed,
            "z": _complex_to_json(self.z),
            "z_prime": _complex_to_json(self.z_prime),
            "probes": None if self.probes is None else self.probes.to_json_dict(),
            "s": self.s,
            "z0": _complex_to_json(self.z0),
            "rescale": self.rescale,
            "chain": None if self.chain is None else self.chain.to_json_dict(),
            "output_dir": self.output_dir,
            "save_samples": self.save_samples,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ExperimentConfig":
        try:
            chain = None if obj.get("chain") is None else ChainConfig.from_json_dict(obj["chain"])
        except (ValueError, TypeError) as e:
            raise ValueError(f"chain: {e}") from e
        try:
            potential = PotentialSpec.from_json_dict(obj["potential"])
        except (ValueError, TypeError, KeyError) as e:
            raise ValueError(f"potential: {e}") from e
        probes = obj.get("probes")
        return cls(
            kind=obj["kind"],
            n=int(obj["n"]),
            potential=potential,
            reps=int(obj.get("reps", 100)),
            seed=int(obj.get("seed", 0)),
            z=_complex_from_json(obj.get("z", [0.0, 0.0])),
            z_prime=_complex_from_json(obj.get("z_prime", [0.3, 0.0])),
            probes=None if probes is None else ProbeSet.from_json_dict(probes),
            s=float(obj.get("s", 0.3)),
            z0=_complex_from_json(obj.get("z0", [0.0, 0.0])),
            rescale=obj.get("rescale"),
            chain=chain,
            output_dir=obj.get("output_dir"),
            save_samples=bool(obj.get("save_samples", True)),
        )

    def resolved_chain(self) -> ChainConfig:
        """The chain schedule actually run: explicit if given, else defaults
        scaled to the ensemble (the log-gas mixes much faster per unit cost
        than the full-matrix walk, so it gets heavier thinning for free)."""
        if self.chain is not None:
            return self.chain
        if self.is_ginibre:
            burn, thin = 2000, (100 if self.n <= 50 else 500)
        elif self.n <= 4:
            burn, thin = 2000, 40
        elif self.n <= 50:
            burn, thin = 2500, 150
        else:
            burn, thin = 4000, 400
        return ChainConfig.for_emissions(
            self.reps,
            burn_in=burn,
            thinning=thin,
            seed=self.seed,
            step_size=default_step_size(self.n),
        )


def canonical_json(obj) -> str:
    """Stable serialization used for hashing and summaries."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_config(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_json_dict(json.load(fh))
