import math

import numpy as np
import pytest
from scipy import stats

from src.analysis.ggd import (
    GgdParams, error_probability, f_gamma, fit_ggd, gaussian_ks_distance, ggd_ks_distance,
    kurtosis_of_shape, shape_from_kurtosis, tail_probabilities,
)
from src.experiments.config import ExperimentConfig
from src.experiments.sim import run_ggd_table
from src.utils.errors import DomainError, GgdFitError


class TestShape:
    def test_kurtosis_values(self):
        assert kurtosis_of_shape(2.0) == pytest.approx(3.0, rel=1e-12)
        assert kurtosis_of_shape(1.0) == pytest.approx(6.0, rel=1e-12)
        assert kurtosis_of_shape(0.5) == pytest.approx(25.2, rel=1e-12)
        assert kurtosis_of_shape(20.0) == pytest.approx(1.824, abs=1e-3)

    def test_inversion(self):
        assert shape_from_kurtosis(3.0) == pytest.approx(2.0, abs=1e-7)
        assert shape_from_kurtosis(kurtosis_of_shape(4.5)) == pytest.approx(4.5, abs=1e-6)

    @pytest.mark.parametrize("kappa", [1.5, 30.0])
    def test_unreachable_kurtosis(self, kappa):
        with pytest.raises(GgdFitError):
            shape_from_kurtosis(kappa)


class TestFit:
    def test_gaussian_samples(self):
        x = np.random.default_rng(0).normal(1.0, 0.3, 200_000)
        g = fit_ggd(x)
        assert g.beta == pytest.approx(2.0, abs=0.1)
        assert g.mu == pytest.approx(1.0, abs=0.01)
        assert g.variance == pytest.approx(0.09, rel=0.02)

    def test_laplace_samples(self):
        x = np.random.default_rng(1).laplace(0.0, 1.0, 200_000)
        assert fit_ggd(x).beta == pytest.approx(1.0, abs=0.1)

    def test_too_few_samples(self):
        with pytest.raises(DomainError):
            fit_ggd(np.zeros(100))

    def test_constant_samples(self):
        with pytest.raises(GgdFitError):
            fit_ggd(np.ones(20_000))

    def test_ks_prefers_ggd_on_flat_topped_data(self):
        x = stats.gennorm(4.0).rvs(20_000, random_state=2)
        g = fit_ggd(x)
        assert g.beta == pytest.approx(4.0, abs=0.5)
        assert ggd_ks_distance(x, g) < gaussian_ks_distance(x)


class TestTails:
    def test_half_at_location(self):
        g = GgdParams(0.3, 0.2, 2.5)
        assert f_gamma(0.3, g, 0) == 0.5
        assert f_gamma(0.3, g, 1) == 0.5

    def test_infinite_thresholds(self):
        g = GgdParams(0.0, 1.0, 2.0)
        assert f_gamma(math.inf, g, 0) == 0.0
        assert f_gamma(-math.inf, g, 0) == 1.0
        assert f_gamma(math.inf, g, 1) == 1.0
        assert f_gamma(-math.inf, g, 1) == 0.0

    @pytest.mark.parametrize("eta", [-0.4, 0.1, 0.55, 1.7])
    def test_matches_scipy_gennorm(self, eta):
        g = GgdParams(0.2, 0.35, 3.1)
        dist = g.frozen()
        assert f_gamma(eta, g, 0) == pytest.approx(dist.sf(eta), rel=1e-9, abs=1e-15)
        assert f_gamma(eta, g, 1) == pytest.approx(dist.cdf(eta), rel=1e-9, abs=1e-15)

    def test_error_probability_symmetric_case(self):
        g0 = GgdParams(0.0, 0.3, 2.0)
        g1 = GgdParams(1.0, 0.3, 2.0)
        t0, t1 = tail_probabilities(g0, g1, 0.5)
        assert t0 == pytest.approx(t1, rel=1e-12)
        assert error_probability(g0, g1, 0.5) == pytest.approx(t0, rel=1e-12)
        assert error_probability(g0, g1, 0.5, pi1=0.0) == pytest.approx(t0, rel=1e-12)

    def test_side_validation(self):
        with pytest.raises(DomainError):
            f_gamma(0.0, GgdParams(0.0, 1.0, 2.0), 2)


@pytest.mark.slow
def test_zf_ex_shape_table_reference():
    # reference shape parameters (bit 0, bit 1); the four-slot window includes the current slot
    cfg = ExperimentConfig()
    table = run_ggd_table(cfg, n_slots=200_000, K=3)
    expected = {300: (3.0, 2.57), 500: (3.9, 3.3), 700: (5.0, 4.0), 900: (6.3, 4.5)}
    for row in table.itertuples():
        b0, b1 = expected[row.Q1]
        assert row.beta0 == pytest.approx(b0, abs=0.8)
        assert row.beta1 == pytest.approx(b1, abs=0.8)
    assert table["beta0"].is_monotonic_increasing
