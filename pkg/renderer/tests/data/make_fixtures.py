"""Regenerate the committed artifact fixtures under this directory.

Needs the overlap-lab package installed.  The runs are deliberately
small (they exist to pin the file formats, not the statistics) and
fully seeded, so re-running the script reproduces the same bytes.
"""

from pathlib import Path

from overlap_lab import ChainConfig, ExperimentConfig, run

HERE = Path(__file__).parent

run(
    ExperimentConfig(
        kind="figure1",
        n=40,
        reps=10,
        seed=21,
        chain=ChainConfig.for_emissions(10, burn_in=1500, thinning=150, seed=21),
        output_dir=str(HERE / "figure_small"),
        save_samples=False,
    )
)

run(
    ExperimentConfig(
        kind="tail",
        n=12,
        reps=200,
        seed=22,
        chain=ChainConfig.for_emissions(200, burn_in=1200, thinning=60, seed=22),
        output_dir=str(HERE / "tail_small"),
        save_samples=False,
    )
)

print("fixtures written under", HERE)
