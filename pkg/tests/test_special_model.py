import math

import numpy as np
import pytest

from src.channel.model import (
    REFERENCE_CROSS_PARAMS, REFERENCE_PAIR_PARAMS, ChannelModelParams, SlotProbabilities,
    model_cdf, model_jacobian, model_values, siso_cdf, slot_probs,
)
from src.channel.special import erfc, lower_incomplete_gamma, regularized_lower_gamma
from src.particles.topology import Topology
from src.utils.errors import DomainError


def gamma_series(s, x):
    """P(s, x) = x^s e^-x sum_k x^k / Gamma(s + k + 1), summed exactly."""
    if x == 0:
        return 0.0
    term = math.exp(s * math.log(x) - x - math.lgamma(s + 1))
    terms, k = [term], 0
    while k < x or term > 1e-30:
        k += 1
        term *= x / (s + k)
        terms.append(term)
    return math.fsum(terms)


class TestSpecial:
    def test_erfc_values(self):
        assert erfc(0.0) == 1.0
        assert erfc(1.0) == pytest.approx(0.157299207050285, rel=1e-12)
        assert erfc(np.inf) == 0.0

    def test_gamma_closed_forms(self):
        x = np.array([0.1, 1.0, 3.0])
        np.testing.assert_allclose(regularized_lower_gamma(1.0, x), 1 - np.exp(-x), rtol=1e-12)
        np.testing.assert_allclose(regularized_lower_gamma(0.5, x), [math.erf(math.sqrt(v)) for v in x], rtol=1e-12)
        assert lower_incomplete_gamma(2.0, 1.0) == pytest.approx(1 - 2 / math.e, rel=1e-12)

    def test_erfc_grid(self):
        x = np.linspace(0.0, 10.0, 2001)
        want = np.array([math.erfc(v) for v in x])
        np.testing.assert_allclose(erfc(x), want, rtol=0, atol=1e-10)

    @pytest.mark.parametrize("s", [1.0, 2.0, 3.0, 5.0])
    def test_gamma_integer_shape_grid(self, s):
        x = np.linspace(0.0, 50.0, 501)
        n = int(s)
        want = [1.0 - math.exp(-v) * math.fsum(v ** k / math.factorial(k) for k in range(n)) for v in x]
        np.testing.assert_allclose(regularized_lower_gamma(s, x), want, rtol=0, atol=1e-10)

    @pytest.mark.parametrize("s", [0.5, 1.5, 2.5])
    def test_gamma_half_integer_shape_grid(self, s):
        # P(n + 1/2, x) = erf(sqrt x) - e^-x sum_{k<n} x^(k+1/2) / Gamma(k + 3/2)
        x = np.linspace(0.0, 50.0, 501)
        n = int(s)
        want = [math.erf(math.sqrt(v)) - math.exp(-v) * math.fsum(
                    v ** (k + 0.5) / math.gamma(k + 1.5) for k in range(n)) for v in x]
        np.testing.assert_allclose(regularized_lower_gamma(s, x), want, rtol=0, atol=1e-10)

    @pytest.mark.parametrize("s", [0.05, 0.3, 0.77, 3.3, 4.9])
    def test_gamma_series_grid(self, s):
        x = np.linspace(0.0, 50.0, 251)
        np.testing.assert_allclose(regularized_lower_gamma(s, x), [gamma_series(s, v) for v in x],
                                   rtol=0, atol=1e-10)

    def test_gamma_domain(self):
        with pytest.raises(DomainError):
            regularized_lower_gamma(0.0, 1.0)
        with pytest.raises(DomainError):
            regularized_lower_gamma(1.0, -0.1)


class TestModel:
    def test_siso_reference_value(self):
        assert siso_cdf(0.2, 4.0, 2.0, 50.0) == pytest.approx(0.4364805640, rel=1e-8)
        assert siso_cdf(0.0, 4.0, 2.0, 50.0) == 0.0

    def test_exact_coefficients_reproduce_siso(self, topology):
        t = np.linspace(0, 1.5, 301)
        np.testing.assert_allclose(model_values(t, (1.0, 0.5, 0.5), topology, topology.d),
                                   siso_cdf(t, topology.r_r, topology.d, topology.D), rtol=1e-12)

    def test_limits(self, topology):
        pair = REFERENCE_PAIR_PARAMS
        cross = REFERENCE_CROSS_PARAMS
        assert pair.limit() == pytest.approx(0.610333, rel=1e-5)
        assert cross.limit() == pytest.approx(0.102247, rel=1e-4)
        assert pair.cdf(1e12) == pytest.approx(pair.limit(), rel=1e-5)

    def test_monotone(self):
        t = np.linspace(0, 2, 1001)
        for params in (REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS):
            f = params.cdf(t)
            assert f[0] == 0.0
            assert np.all(np.diff(f) >= 0)

    def test_negative_time(self):
        with pytest.raises(DomainError):
            REFERENCE_PAIR_PARAMS.cdf(-0.1)

    def test_coefficients_positive(self):
        with pytest.raises(DomainError):
            ChannelModelParams(0.0, 0.5, 0.5)
        assert not ChannelModelParams(1.6, 0.5, 0.5).in_range

    def test_config_round_trip(self):
        back = ChannelModelParams.from_config(REFERENCE_CROSS_PARAMS.to_config())
        assert back == REFERENCE_CROSS_PARAMS

    def test_jacobian_matches_finite_differences(self, topology):
        t = np.linspace(0.01, 1.5, 150)
        b = np.array(REFERENCE_PAIR_PARAMS.as_tuple())
        jac = model_jacobian(t, b, topology, topology.d)
        for i in range(3):
            e = np.zeros(3)
            e[i] = 1e-6
            fd = (model_values(t, b + e, topology, topology.d) - model_values(t, b - e, topology, topology.d)) / 2e-6
            np.testing.assert_allclose(jac[:, i], fd, rtol=1e-5, atol=1e-9)


class TestSlotProbs:
    def test_reference_values(self, probs):
        np.testing.assert_allclose(probs.A, [0.29394478, 0.09068605, 0.04248215, 0.02567117, 0.01758109], rtol=1e-6)
        np.testing.assert_allclose(probs.B, [0.00122531, 0.00727927, 0.00819580, 0.00704374, 0.00582432], rtol=1e-5)
        assert probs.A0 / probs.B0 == pytest.approx(239.894, rel=1e-4)
        assert probs.full_rank

    def test_sums_telescope(self, probs, topology):
        edge = (probs.K + 1) * probs.t_s
        assert probs.A.sum() == pytest.approx(model_cdf(edge, REFERENCE_PAIR_PARAMS, topology.d), rel=1e-12)

    def test_truncate_and_siso(self, probs):
        short = probs.truncated(2)
        assert short.K == 2 and len(short.A) == 3
        assert np.all(probs.siso().B == 0)
        with pytest.raises(DomainError):
            probs.truncated(9)

    def test_validation(self, topology):
        with pytest.raises(DomainError):
            slot_probs(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, 0.0, 4)
        with pytest.raises(DomainError):
            SlotProbabilities([0.5, 0.1], [0.1], 0.1, 1)
