"""End-to-end checks of the artifact renderer.

The committed tables under data/ were produced by the sampling package
(data/make_fixtures.py regenerates them); synthetic tables are written
here in the same CSV dialect.  The renderer only draws, so the tests
assert on loader strictness, written bytes, and the calibration of the
whole CSV -> figure path against synthetic Exp(1) data.
"""

import csv
import subprocess
import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

from overlap_figures import (
    PlotSpec,
    load_histogram,
    load_summary,
    load_survival,
    render_histogram,
    render_survival,
)
from overlap_figures.cli import main

DATA = Path(__file__).parent / "data"
FIGURE_DIR = DATA / "figure_small"
TAIL_DIR = DATA / "tail_small"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


def histogram_rows(left, right, count, overlay, density):
    return [
        [repr(float(l)), repr(float(r)), int(c), repr(float(o)), repr(float(d))]
        for l, r, c, o, d in zip(left, right, count, overlay, density)
    ]


def synthetic_exp1_histogram(path, n_draws=20000, seed=2026):
    """Exp(1) draws piped through the documented histogram.csv format."""
    rng = np.random.default_rng(seed)
    x = np.sqrt(rng.exponential(size=n_draws))
    edges = np.linspace(0.0, 3.2, 33)
    count, _ = np.histogram(x, bins=edges)
    left, right = edges[:-1], edges[1:]
    width = right - left
    overlay = (np.exp(-(left**2)) - np.exp(-(right**2))) / width
    density = count / (x.size * width)
    header = ["bin_left", "bin_right", "count", "overlay_density", "density"]
    return write_csv(path, header, histogram_rows(left, right, count, overlay, density))


class TestHistogramLoader:
    def test_reads_fixture_and_matches_summary(self):
        table = load_histogram(FIGURE_DIR / "histogram.csv")
        summary = load_summary(FIGURE_DIR / "summary.json")
        assert len(table.count) == 32
        assert np.all(table.widths > 0)
        assert table.count.sum() > 0
        discrepancy = float(np.sum(np.abs(table.density - table.overlay_density) * table.widths))
        assert discrepancy == pytest.approx(summary["histogram_discrepancy"], rel=1e-12)

    def test_missing_overlay_column(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count"],
            [[0.0, 0.1, 3], [0.1, 0.2, 4]],
        )
        with pytest.raises(ValueError, match="overlay_density"):
            load_histogram(path)

    def test_header_only_is_empty(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density", "density"],
            [],
        )
        with pytest.raises(ValueError, match="empty"):
            load_histogram(path)

    def test_all_zero_counts_is_empty(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density", "density"],
            [[0.0, 0.1, 0, 0.1, 0.0], [0.1, 0.2, 0, 0.3, 0.0]],
        )
        with pytest.raises(ValueError, match="empty"):
            load_histogram(path)

    def test_gap_between_bins(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density", "density"],
            [[0.0, 0.1, 3, 0.1, 0.15], [0.2, 0.3, 4, 0.3, 0.2]],
        )
        with pytest.raises(ValueError, match="contiguous"):
            load_histogram(path)

    def test_nonpositive_width(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density", "density"],
            [[0.1, 0.1, 3, 0.1, 0.15]],
        )
        with pytest.raises(ValueError, match="width"):
            load_histogram(path)

    def test_non_numeric_cell(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density", "density"],
            [[0.0, 0.1, "many", 0.1, 0.15]],
        )
        with pytest.raises(ValueError, match="count"):
            load_histogram(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValueError, match="no such file"):
            load_histogram(tmp_path / "absent.csv")

    def test_density_fallback_when_column_absent(self, tmp_path):
        path = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count", "overlay_density"],
            [[0.0, 0.5, 30, 1.0], [0.5, 1.0, 10, 0.4]],
        )
        table = load_histogram(path)
        assert table.density == pytest.approx([1.5, 0.5])


class TestSurvivalLoader:
    def test_reads_fixture(self):
        table = load_survival(TAIL_DIR / "survival.csv")
        assert len(table.delta) == 40
        assert np.all(table.bound > 0)
        assert np.all(np.diff(table.bound) < 0)
        assert table.empirical is not None
        assert np.all((table.empirical >= 0) & (table.empirical <= 1))
        assert table.std_error is not None

    def test_bound_only_columns(self, tmp_path):
        path = write_csv(
            tmp_path / "survival.csv", ["delta", "bound"], [[0.1, 1.9], [1.0, 0.7]]
        )
        table = load_survival(path)
        assert table.empirical is None and table.std_error is None

    def test_blank_empirical_cells_mean_bound_only(self, tmp_path):
        path = write_csv(
            tmp_path / "survival.csv",
            ["delta", "empirical", "bound"],
            [[0.1, "", 1.9], [1.0, "", 0.7]],
        )
        assert load_survival(path).empirical is None

    def test_missing_bound_column(self, tmp_path):
        path = write_csv(tmp_path / "survival.csv", ["delta", "empirical"], [[0.1, 0.9]])
        with pytest.raises(ValueError, match="bound"):
            load_survival(path)


class TestRenderHistogram:
    def test_fixture_renders_deterministically(self, tmp_path):
        source = FIGURE_DIR / "histogram.csv"
        before = source.read_bytes()
        spec = PlotSpec(
            output=tmp_path / "fig.png",
            histogram=source,
            summary=FIGURE_DIR / "summary.json",
        )
        written = render_histogram(spec)
        assert written == tmp_path / "fig.png"
        first = written.read_bytes()
        assert first.startswith(PNG_MAGIC) and len(first) > 10_000
        render_histogram(spec)
        assert written.read_bytes() == first
        assert source.read_bytes() == before

    def test_invalid_input_writes_nothing(self, tmp_path):
        bad = write_csv(
            tmp_path / "histogram.csv",
            ["bin_left", "bin_right", "count"],
            [[0.0, 0.1, 3]],
        )
        out = tmp_path / "fig.png"
        with pytest.raises(ValueError, match="overlay_density"):
            render_histogram(PlotSpec(output=out, histogram=bad))
        assert not out.exists()

    def test_spec_without_histogram_input(self, tmp_path):
        with pytest.raises(ValueError, match="histogram"):
            render_histogram(PlotSpec(output=tmp_path / "fig.png"))


class TestRenderSurvival:
    def test_fixture_renders_deterministically(self, tmp_path):
        spec = PlotSpec(
            output=tmp_path / "tail.png",
            survival=TAIL_DIR / "survival.csv",
            summary=TAIL_DIR / "summary.json",
        )
        written = render_survival(spec)
        first = written.read_bytes()
        assert first.startswith(PNG_MAGIC)
        render_survival(spec)
        assert written.read_bytes() == first

    def test_bound_only_renders_with_warning(self, tmp_path):
        path = write_csv(
            tmp_path / "survival.csv",
            ["delta", "bound"],
            [[0.05 * q, 2.0 * np.exp(-0.05 * q)] for q in range(1, 41)],
        )
        out = tmp_path / "bound.png"
        with pytest.warns(UserWarning, match="bound alone"):
            render_survival(PlotSpec(output=out, survival=path))
        assert out.exists()

    def test_zero_empirical_rows_render_without_warning(self, tmp_path):
        rows = [[0.5, 0.4, 1.2, 0.02, 1], [4.0, 0.0, 0.04, 0.0, 1]]
        path = write_csv(
            tmp_path / "survival.csv",
            ["delta", "empirical", "bound", "std_error", "passed"],
            rows,
        )
        out = tmp_path / "tail.png"
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            render_survival(PlotSpec(output=out, survival=path))
        assert not [w for w in caught if "bound alone" in str(w.message)]
        assert out.exists()


def test_synthetic_exp1_calibration(tmp_path):
    """Exp(1) data through the full CSV -> figure path matches 2x exp(-x^2)."""
    source = synthetic_exp1_histogram(tmp_path / "histogram.csv")
    out = tmp_path / "synthetic.png"
    render_histogram(PlotSpec(output=out, histogram=source, title="synthetic Exp(1)"))
    table = load_histogram(source)
    discrepancy = float(np.sum(np.abs(table.density - table.overlay_density) * table.widths))
    ok = discrepancy < 0.1 and out.exists()
    print(
        f"[{'PASS' if ok else 'FAIL'}] synthetic-exp1-calibration: "
        f"integrated |bars - curve| = {discrepancy:.4f} (limit 0.1)"
    )
    assert out.exists()
    assert discrepancy < 0.1


class TestCli:
    def test_histogram_invocation(self, tmp_path, capsys):
        out = tmp_path / "fig.png"
        code = main(
            [
                "--hist", str(FIGURE_DIR / "histogram.csv"),
                "--summary", str(FIGURE_DIR / "summary.json"),
                "--out", str(out),
            ]
        )
        assert code == 0
        assert out.exists()
        assert str(out) in capsys.readouterr().out

    def test_requires_exactly_one_input_kind(self, tmp_path, capsys):
        out = str(tmp_path / "fig.png")
        both = main(
            [
                "--hist", str(FIGURE_DIR / "histogram.csv"),
                "--survival", str(TAIL_DIR / "survival.csv"),
                "--out", out,
            ]
        )
        neither = main(["--out", out])
        assert (both, neither) == (2, 2)
        assert "exactly one" in capsys.readouterr().err

    def test_unreadable_input_is_usage_error(self, tmp_path, capsys):
        code = main(["--hist", str(tmp_path / "absent.csv"), "--out", str(tmp_path / "f.png")])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_module_entry_point(self, tmp_path):
        out = tmp_path / "tail.png"
        proc = subprocess.run(
            [
                sys.executable, "-m", "overlap_figures.cli",
                "--survival", str(TAIL_DIR / "survival.csv"),
                "--summary", str(TAIL_DIR / "summary.json"),
                "--out", str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()
