"""
Generalized Gaussian fit of detector outputs and the error probability it predicts.

    f(x) = beta / (2 alpha Gamma(1/beta)) exp(-(|x - mu| / alpha)^beta)
    var  = alpha^2 Gamma(3/beta) / Gamma(1/beta)
    kurt = Gamma(5/beta) Gamma(1/beta) / Gamma(3/beta)^2     (3 at beta = 2)
"""
from dataclasses import dataclass
import math
import numpy as np
from scipy import stats
from scipy.optimize import brentq
from scipy.special import gammaln
from ..channel.special import regularized_lower_gamma
from ..utils.errors import DomainError, GgdFitError

BETA_BRACKET = (0.5, 20.0)
MIN_SAMPLES = 10_000


def kurtosis_of_shape(beta):
    b = np.asarray(beta, dtype=float)
    out = np.exp(gammaln(5 / b) + gammaln(1 / b) - 2 * gammaln(3 / b))
    return float(out) if out.ndim == 0 else out


def shape_from_kurtosis(kappa, bracket=BETA_BRACKET) -> float:
    lo, hi = bracket
    k_hi, k_lo = kurtosis_of_shape(lo), kurtosis_of_shape(hi)
    if not k_lo <= kappa <= k_hi:
        raise GgdFitError(f"kurtosis {kappa:.4f} outside [{k_lo:.4f}, {k_hi:.4f}] reachable on beta in {bracket}")
    return float(brentq(lambda b: kurtosis_of_shape(b) - kappa, lo, hi, xtol=1e-8))


@dataclass(frozen=True)
class GgdParams:
    mu: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError("GGD needs alpha > 0 and beta > 0")

    @property
    def kappa(self) -> float:
        return kurtosis_of_shape(self.beta)

    @property
    def variance(self) -> float:
        return self.alpha ** 2 * math.exp(gammaln(3 / self.beta) - gammaln(1 / self.beta))

    @classmethod
    def from_moments(cls, mu, variance, beta) -> "GgdParams":
        alpha = math.sqrt(variance * math.exp(gammaln(1 / beta) - gammaln(3 / beta)))
        return cls(float(mu), alpha, float(beta))

    def frozen(self):
        return stats.gennorm(self.beta, loc=self.mu, scale=self.alpha)


def fit_ggd(samples, min_samples=MIN_SAMPLES) -> GgdParams:
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < min_samples:
        raise DomainError(f"need >= {min_samples} samples (got {x.size})")
    mu = float(x.mean())
    c = x - mu
    var = float(np.mean(c ** 2))
    if not var > 0:
        raise GgdFitError("samples have zero variance")
    kappa = float(np.mean(c ** 4) / var ** 2)
    return GgdParams.from_moments(mu, var, shape_from_kurtosis(kappa))


def f_gamma(eta, ggd: GgdParams, side: int) -> float:
    """
    Conditional error tail of one bit class at threshold eta:
    side 0 -> P(X0 >= eta), side 1 -> P(X1 < eta). Equals 1/2 at eta = mu.
    """
    if side not in (0, 1):
        raise DomainError("side must be 0 or 1")
    if math.isinf(eta):
        above = eta > 0
        return float(above) if side == 1 else float(not above)
    z = abs(eta - ggd.mu) / ggd.alpha
    half_mass = 0.5 * float(regularized_lower_gamma(1.0 / ggd.beta, z ** ggd.beta))
    sign = math.copysign(1.0, eta - ggd.mu) if eta != ggd.mu else 0.0
    return 0.5 - sign * half_mass if side == 0 else 0.5 + sign * half_mass


def tail_probabilities(ggd0: GgdParams, ggd1: GgdParams, eta_plus) -> tuple[float, float]:
    return f_gamma(eta_plus, ggd0, 0), f_gamma(eta_plus, ggd1, 1)


def error_probability(ggd0: GgdParams, ggd1: GgdParams, eta_plus, pi1=0.5) -> float:
    """Prior-weighted bit error probability of the upper-threshold rule."""
    t0, t1 = tail_probabilities(ggd0, ggd1, eta_plus)
    return (1.0 - pi1) * t0 + pi1 * t1


def ggd_ks_distance(samples, ggd: GgdParams) -> float:
    return float(stats.kstest(np.asarray(samples).ravel(), ggd.frozen().cdf).statistic)


def gaussian_ks_distance(samples) -> float:
    x = np.asarray(samples, dtype=float).ravel()
    return float(stats.kstest(x, stats.norm(x.mean(), x.std()).cdf).statistic)
