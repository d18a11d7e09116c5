"""Command-line wrapper: pick one artifact kind, write one image.

    overlap-figures --hist run/histogram.csv --summary run/summary.json --out fig.png
    overlap-figures --survival run/survival.csv --out tail.png

Exit codes: 0 on success, 2 for bad usage or an unreadable/invalid
artifact.  The tool only reads its inputs; the single output is --out.
"""

from __future__ import annotations

import argparse
import sys

from .plots import PlotSpec, render_histogram, render_survival


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overlap-figures",
        description="Render overlap-lab CSV/JSON artifacts to an image (read-only).",
    )
    parser.add_argument(
        "--hist", metavar="HISTOGRAM_CSV", help="histogram.csv from an exp1 or figure1 run"
    )
    parser.add_argument(
        "--survival", metavar="SURVIVAL_CSV", help="survival.csv from a tail run"
    )
    parser.add_argument(
        "--summary", metavar="SUMMARY_JSON", help="summary.json used for titles and labels"
    )
    parser.add_argument("--title", help="override the figure title")
    parser.add_argument(
        "--out", required=True, metavar="IMAGE", help="output image path (.png, .svg, or .pdf)"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    chosen = [flag for flag, value in (("--hist", args.hist), ("--survival", args.survival)) if value]
    if len(chosen) != 1:
        print("error: pass exactly one of --hist / --survival", file=sys.stderr)
        return 2
    spec = PlotSpec(
        output=args.out,
        histogram=args.hist,
        survival=args.survival,
        summary=args.summary,
        title=args.title,
    )
    try:
        written = render_histogram(spec) if args.hist else render_survival(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(written)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
