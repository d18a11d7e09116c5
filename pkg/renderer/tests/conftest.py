"""Shared guard for the renderer tests.

Skips the whole directory when the renderer (or matplotlib) is not
installed, so collecting from the repository root still works in an
environment that only built the sampling package.
"""

import pytest

matplotlib = pytest.importorskip("matplotlib")
matplotlib.use("Agg")
pytest.importorskip("overlap_figures")
