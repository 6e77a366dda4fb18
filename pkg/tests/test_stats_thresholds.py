import math

import numpy as np
import pytest

from src.detection.bank import detector_outputs
from src.detection.stats import (
    DetectorStats, detector_stats_adaptive, detector_stats_ex, detector_stats_in,
    interference_stats, gated_binomial_stats,
)
from src.detection.thresholds import (
    ThresholdPair, decide, log_density_gap, scan_threshold, threshold_pair,
)
from src.link.config import NoiseConfig, TxConfig
from src.link.sim import random_bits, simulate_link
from src.utils.errors import DomainError, RankDeficiencyError
from src.channel.model import SlotProbabilities


class TestGatedBinomial:
    def test_known_values(self):
        assert gated_binomial_stats(100, 0.1, 0.5) == pytest.approx((5.0, 29.5))

    def test_silent_source(self):
        assert gated_binomial_stats(100, 0.3, 0.0) == (0.0, 0.0)

    def test_slot_index_limits_isi(self, probs):
        first = interference_stats(probs, 700, 0.5, 10.0, slot=1)
        assert first.components == ()
        assert first.var_I == pytest.approx(100.0)
        second = interference_stats(probs, 700, 0.5, 10.0, slot=2)
        assert len(second.components) == 2
        steady = interference_stats(probs, 700, 0.5, 10.0)
        assert len(steady.components) == 2 * probs.K
        with pytest.raises(DomainError):
            interference_stats(probs, 700, 0.5, 10.0, slot=0)


class TestDetectorStats:
    def test_without_ili_both_zf_agree(self, probs):
        no_ili = probs.siso()
        ex = detector_stats_ex(no_ili, 700, 0.5, 10.0)
        zin = detector_stats_in(no_ili, 700, 0.5, 10.0)
        for a, b in zip((ex.mu0, ex.mu1, ex.var0, ex.var1), (zin.mu0, zin.mu1, zin.var0, zin.var1)):
            assert a == pytest.approx(b, rel=1e-12)

    def test_adaptive_is_scaled_zf_ex(self, probs):
        ex = detector_stats_ex(probs, 700, 0.5, 10.0)
        ad = detector_stats_adaptive(probs, 700, 0.5, 10.0)
        assert ad.mu0 == pytest.approx(probs.A0 * ex.mu0)
        assert ad.var1 == pytest.approx(probs.A0 ** 2 * ex.var1)
        assert ad.beta_ratio == pytest.approx(ex.beta_ratio)

    def test_singular_mean_channel(self):
        probs = SlotProbabilities([0.2, 0.1], [0.2, 0.05], 0.1, 1)
        with pytest.raises(RankDeficiencyError):
            detector_stats_in(probs, 100, 0.5, 1.0)

    def test_zf_in_moments_match_simulation(self, probs):
        rng = np.random.default_rng(11)
        tx = TxConfig(Q1=700)
        bits = random_bits(100_000, 0.5, rng)
        trace = simulate_link(bits, tx, probs, NoiseConfig(10.0), rng)
        out, _, _ = detector_outputs("zf_in", trace, tx, probs, 10.0)
        out, x = out[probs.K:].ravel(), trace.x[probs.K:].ravel()
        st = detector_stats_in(probs, tx.Q1, tx.pi1, 10.0)
        assert out[x == 0].mean() == pytest.approx(st.mu0, rel=0.03)
        assert out[x == 1].mean() == pytest.approx(st.mu1, rel=0.03)
        assert out[x == 0].var() == pytest.approx(st.var0, rel=0.03)
        assert out[x == 1].var() == pytest.approx(st.var1, rel=0.03)


class TestThresholds:
    def test_roots_are_density_crossings(self):
        st = DetectorStats(0.3, 1.3, 0.04, 0.07, "zf_in")
        th = threshold_pair(st)
        assert abs(log_density_gap(th.eta_plus, st)) < 1e-10
        assert abs(log_density_gap(th.eta_minus, st)) < 1e-10
        assert st.mu0 < th.eta_plus < st.mu1
        assert th.eta_minus < st.mu0

    def test_stable_when_variances_nearly_equal(self):
        st = DetectorStats(0.0, 1.0, 0.01, 0.01 * (1 + 1e-12), "zf_ex")
        assert threshold_pair(st).eta_plus == pytest.approx(0.5, abs=1e-6)

    def test_equal_variances_give_midpoint(self):
        th = threshold_pair(DetectorStats(0.2, 1.2, 0.05, 0.05, "zf_ex"))
        assert th.eta_plus == pytest.approx(0.7)
        assert th.eta_minus == -math.inf

    def test_noiseless_bit0_falls_back_to_midpoint(self):
        th = threshold_pair(DetectorStats(0.0, 1.0, 0.0, 0.02, "zf_ex"))
        assert th.eta_plus == pytest.approx(0.5)
        assert th.eta_minus == -math.inf

    def test_noiseless_single_stream_thresholds(self):
        probs = SlotProbabilities([0.3], [0.0], 0.1, 0)
        st = detector_stats_ex(probs, 200, 0.5, 0.0)
        assert st.var0 == 0.0
        assert threshold_pair(st).eta_plus == pytest.approx(0.5)

    def test_rejects_shrinking_variance(self):
        with pytest.raises(DomainError):
            threshold_pair(DetectorStats(0.0, 1.0, 0.05, 0.04, "zf_ex"))

    def test_pair_ordering(self):
        with pytest.raises(DomainError):
            ThresholdPair(1.0, 0.5)

    def test_decide_counts_lower_triggers(self):
        bits, lower = decide([-3.0, 0.2, 0.9, 0.5], ThresholdPair(-2.0, 0.5))
        np.testing.assert_array_equal(bits, [1, 0, 1, 1])
        assert lower == 1

    def test_scan_finds_separating_threshold(self):
        y = np.array([0.0, 0.1, 0.2, 0.8, 0.9, 1.0])
        b = np.array([0, 0, 0, 1, 1, 1])
        eta, err = scan_threshold(y, b, lo=0.0, hi=1.0, step=0.01)
        assert err == 0.0
        assert 0.2 < eta <= 0.8
        assert eta == pytest.approx(0.5, abs=0.01)

    def test_analytic_threshold_close_to_brute_force(self, probs):
        rng = np.random.default_rng(12)
        tx = TxConfig(Q1=700)
        bits = random_bits(100_000, 0.5, rng)
        trace = simulate_link(bits, tx, probs, NoiseConfig(10.0), rng)
        out, th, _ = detector_outputs("zf_in", trace, tx, probs, 10.0)
        _, ber_bf = scan_threshold(out, trace.x)
        decided, _ = decide(out, th)
        ber = np.mean(decided != trace.x)
        assert ber <= 1.25 * ber_bf + 1e-4
