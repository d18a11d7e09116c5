"""Command-line surface.

Three verbs, mirroring the library layers:

* ``sample`` — draw triangular models and dump them to CSV;
* ``experiment tail|exp1|gaussian-array|figure1|local-law`` — run one
  Monte Carlo experiment and write its artifacts;
* ``validate jacobian|cn|kostlan|oracle2`` — exact structural checks,
  JSON verdict on stdout.

``--config file.json`` supplies a base ExperimentConfig; explicit flags
override individual fields of it, and built-in defaults fill the rest.
Exit status: 0 when every asserted check passed, 1 when a check failed,
2 on configuration errors, 3 when a chain diverged.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ExperimentConfig, canonical_json, load_config, potential_from_text
from .model import ProbeSet
from .potentials import ginibre_potential
from .runner import run
from .samplers import ChainConfig, DivergenceError

_EXPERIMENT_KINDS = {
    "tail": "tail",
    "exp1": "exp1",
    "gaussian-array": "gaussian_array",
    "figure1": "figure1",
    "local-law": "local_law",
}

_VALIDATE_KINDS = {
    "jacobian": "validate_jacobian",
    "cn": "validate_cn",
    "kostlan": "validate_kostlan",
    "oracle2": "validate_oracle2",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file providing base values")
    p.add_argument("--n", type=int, help="matrix size")
    p.add_argument(
        "--potential",
        help="'ginibre', 'quartic-quintic', or inline JSON "
        '{"coefficients": [...], "alpha": a}',
    )
    p.add_argument("--alpha", type=float, help="tail-rate parameter of the potential")
    p.add_argument("--reps", "--samples", dest="reps", type=int, help="sample/repetition count")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out", help="output directory for artifacts")
    p.add_argument("--burn-in", dest="burn_in", type=int, help="chain burn-in steps")
    p.add_argument("--thinning", type=int, help="chain thinning stride")
    p.add_argument("--chains", type=int, help="number of parallel chains")
    p.add_argument("--step-size", dest="step_size", type=float, help="MALA step size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overlap-lab",
        description="Eigenvector-overlap laboratory for triangular matrix ensembles",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_sample = sub.add_parser("sample", help="draw triangular models and dump CSV")
    _add_common(p_sample)
    p_sample.add_argument(
        "--no-save", action="store_true", help="summarize in-stream; skip samples.csv"
    )

    p_exp = sub.add_parser("experiment", help="run one Monte Carlo experiment")
    p_exp.add_argument("experiment_kind", choices=sorted(_EXPERIMENT_KINDS))
    _add_common(p_exp)
    p_exp.add_argument("--z", help="first probe point, complex literal (e.g. 0.3+0.1j)")
    p_exp.add_argument("--z-prime", dest="z_prime", help="second probe point")
    p_exp.add_argument(
        "--probes", help="comma-separated complex probe list for gaussian-array"
    )
    p_exp.add_argument("--epsilon", type=float, help="probe-separation exponent")
    p_exp.add_argument("--s", type=float, help="shrinking-disk exponent for local-law")
    p_exp.add_argument("--z0", help="disk center for local-law")
    p_exp.add_argument(
        "--rescale",
        choices=["auto", "on", "off"],
        help="second-moment rescaling of the sqrt(Y) histogram",
    )

    p_val = sub.add_parser("validate", help="structural checks with JSON verdicts")
    p_val.add_argument("validate_kind", choices=sorted(_VALIDATE_KINDS))
    _add_common(p_val)

    return parser


def _parse_complex(text: str) -> complex:
    return complex(text.replace(" ", ""))


def _kind_of(args) -> str:
    if args.verb == "sample":
        return "sample"
    if args.verb == "experiment":
        return _EXPERIMENT_KINDS[args.experiment_kind]
    return _VALIDATE_KINDS[args.validate_kind]


def _chain_from_flags(args, base: ChainConfig | None, reps: int, seed: int) -> ChainConfig | None:
    touched = any(
        getattr(args, f, None) is not None for f in ("burn_in", "thinning", "chains", "step_size")
    )
    if not touched:
        return base
    burn = args.burn_in if args.burn_in is not None else (base.burn_in if base else 2000)
    thin = args.thinning if args.thinning is not None else (base.thinning if base else 100)
    n_chains = args.chains if args.chains is not None else (base.n_chains if base else 1)
    step = args.step_size if args.step_size is not None else (base.step_size if base else None)
    return ChainConfig.for_emissions(
        reps, burn_in=burn, thinning=thin, seed=seed, n_chains=n_chains, step_size=step
    )


def config_from_args(args) -> ExperimentConfig:
    """Flags override config-file values, which override the defaults.

    All updates are collected before the config is constructed, so a
    field that only becomes valid together with another flag (probes for
    gaussian-array, say) never trips validation halfway through.
    """
    kind = _kind_of(args)
    base = load_config(args.config) if args.config is not None else None

    updates: dict = {"kind": kind}
    if args.n is not None:
        updates["n"] = args.n
    elif base is None:
        updates["n"] = 2 if kind == "validate_oracle2" else 50
    if args.potential is not None:
        updates["potential"] = potential_from_text(args.potential, args.alpha)
    elif args.alpha is not None:
        current = base.potential if base is not None else ginibre_potential()
        updates["potential"] = replace(current, alpha=args.alpha)
    if args.reps is not None:
        updates["reps"] = args.reps
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.out is not None:
        updates["output_dir"] = args.out
    if getattr(args, "no_save", False):
        updates["save_samples"] = False
    if getattr(args, "z", None) is not None:
        updates["z"] = _parse_complex(args.z)
    if getattr(args, "z_prime", None) is not None:
        updates["z_prime"] = _parse_complex(args.z_prime)
    if getattr(args, "z0", None) is not None:
        updates["z0"] = _parse_complex(args.z0)
    if getattr(args, "s", None) is not None:
        updates["s"] = args.s
    if getattr(args, "rescale", None) is not None:
        updates["rescale"] = {"auto": None, "on": True, "off": False}[args.rescale]
    if getattr(args, "probes", None) is not None:
        eps = args.epsilon if getattr(args, "epsilon", None) is not None else 0.25
        probes = tuple(_parse_complex(s) for s in args.probes.split(","))
        updates["probes"] = ProbeSet(probes, eps)

    base_chain = base.chain if base is not None else None
    seed = updates.get("seed", base.seed if base is not None else 0)
    reps = updates.get("reps", base.reps if base is not None else 100)
    chain = _chain_from_flags(args, base_chain, reps, seed)
    if chain is not base_chain:
        updates["chain"] = chain

    if base is not None:
        return replace(base, **updates)
    return ExperimentConfig(**updates)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValueError, OSError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    try:
        result = run(cfg)
    except DivergenceError as e:
        print(f"sampler diverged: {e}", file=sys.stderr)
        print(
            "hint: lower --step-size (default 0.7 n^-3/4) or extend --burn-in",
            file=sys.stderr,
        )
        return 3
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(canonical_json(result.summary))
    if result.artifacts:
        for name in sorted(result.artifacts):
            print(f"wrote {result.artifacts[name]}", file=sys.stderr)
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
