"""KS machinery cross-checked against scipy's implementations."""

import numpy as np
import pytest
from scipy import stats as sps

from overlap_lab import exp1_cdf, ks_critical, ks_distance, ks_two_sample, mean_z_score
from overlap_lab.stats import THREE_SIGMA_CONFIDENCE, ks_two_sample_critical


def test_ks_distance_matches_scipy():
    rng = np.random.default_rng(0)
    x = rng.exponential(size=500)
    ours = ks_distance(x, exp1_cdf)
    scipy_stat = sps.kstest(x, "expon").statistic
    assert ours == pytest.approx(scipy_stat, rel=1e-12)


def test_ks_two_sample_matches_scipy():
    rng = np.random.default_rng(1)
    a = rng.exponential(size=400)
    b = rng.exponential(scale=1.1, size=300)
    ours = ks_two_sample(a, b)
    scipy_stat = sps.ks_2samp(a, b, method="asymp").statistic
    assert ours == pytest.approx(scipy_stat, rel=1e-12)


def test_exp1_cdf_values():
    assert exp1_cdf(0.0) == 0.0
    assert exp1_cdf(1.0) == pytest.approx(1 - np.exp(-1))
    # high tail is computed without cancellation
    assert exp1_cdf(40.0) == pytest.approx(1.0)


def test_critical_value_is_three_sigma_calibrated():
    # smirnov tail: P(D > c/sqrt(n)) ~ 2 exp(-2 c^2) = 0.0027 at 3 sigma
    c = ks_critical(1) * 1.0
    assert 2 * np.exp(-2 * c**2) == pytest.approx(1 - THREE_SIGMA_CONFIDENCE, rel=1e-9)
    assert ks_critical(400) == pytest.approx(c / 20.0)


def test_two_sample_critical_reduces_to_one_sample():
    # m -> inf limit: sqrt((n+m)/(n m)) -> 1/sqrt(n)
    big = ks_two_sample_critical(100, 10**12)
    assert big == pytest.approx(ks_critical(100), rel=1e-5)


def test_ks_critical_false_positive_rate():
    # calibration on simulated exponential data: the 3-sigma threshold
    # should almost never fire on the null
    rng = np.random.default_rng(2)
    hits = sum(
        ks_distance(rng.exponential(size=200), exp1_cdf) > ks_critical(200)
        for _ in range(200)
    )
    assert hits <= 2


def test_mean_z_score():
    a = np.array([1.0, 2.0, 3.0])
    b = np.array([1.0, 2.0, 3.0])
    assert mean_z_score(a, b) == 0.0
    rng = np.random.default_rng(3)
    x = rng.normal(size=2000)
    y = rng.normal(loc=0.5, size=2000)
    z = mean_z_score(x, y)
    assert z > 10  # a half-sigma shift at n=2000 is unmissable
