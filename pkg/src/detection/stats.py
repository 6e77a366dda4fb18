"""
Interference statistics and conditional detector-output moments.

The conditional moments are the steady-state ones: every ISI term k = 1..K
of the slot probabilities is present, unless a 1-based slot index is given,
in which case only the k < slot terms exist.
"""
from dataclasses import dataclass
from typing import Literal
import numpy as np
from ..channel.model import SlotProbabilities
from ..utils.errors import DomainError, RankDeficiencyError

DetectorKind = Literal["adaptive", "zf_ex", "zf_in"]


def gated_binomial_stats(Q1, p, pi1) -> tuple[float, float]:
    """Mean and variance of Bernoulli(pi1) * Binomial(Q1, p)."""
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1] (got {p})")
    pi0 = 1.0 - pi1
    mean = pi1 * Q1 * p
    var = pi1 * Q1 * p * (1 - p) + pi0 * pi1 * Q1 ** 2 * p ** 2
    return float(mean), float(var)


@dataclass(frozen=True)
class InterferenceStats:
    mu_I: float
    var_I: float
    components: tuple  # (k, link, mean, var) per ISI term
    ili_mean: float    # current-slot ILI, Bernoulli(pi1) x Binomial(Q1, B0)
    ili_var: float
    sigma_n: float


def interference_stats(probs: SlotProbabilities, Q1, pi1, sigma_n, slot=None) -> InterferenceStats:
    if slot is not None and slot < 1:
        raise DomainError(f"slot index is 1-based (got {slot})")
    last = probs.K if slot is None else min(slot - 1, probs.K)
    comps = []
    for k in range(1, last + 1):
        for link, p in (("pair", probs.A[k]), ("cross", probs.B[k])):
            comps.append((k, link, *gated_binomial_stats(Q1, p, pi1)))
    mu = sum(c[2] for c in comps)
    var = sum(c[3] for c in comps) + sigma_n ** 2
    ili_mean, ili_var = gated_binomial_stats(Q1, probs.B0, pi1)
    return InterferenceStats(float(mu), float(var), tuple(comps), ili_mean, ili_var, float(sigma_n))


@dataclass(frozen=True)
class DetectorStats:
    mu0: float
    mu1: float
    var0: float
    var1: float
    kind: DetectorKind

    @property
    def beta_ratio(self) -> float:
        return self.var1 / self.var0 if self.var0 > 0 else np.inf

    def scaled(self, factor: float, kind: DetectorKind | None = None) -> "DetectorStats":
        """Moments of factor * output (adaptive = A0 * zf_ex)."""
        return DetectorStats(factor * self.mu0, factor * self.mu1, factor ** 2 * self.var0,
                             factor ** 2 * self.var1, kind or self.kind)


def detector_stats_ex(probs: SlotProbabilities, Q1, pi1, sigma_n, slot=None) -> DetectorStats:
    A0, B0 = probs.A0, probs.B0
    if not A0 > 0:
        raise DomainError("A0 must be > 0")
    pi0 = 1.0 - pi1
    it = interference_stats(probs, Q1, pi1, sigma_n, slot)
    mu0 = pi1 * B0 / A0 + it.mu_I / (Q1 * A0)
    var0 = (pi1 * B0 * (1 - B0) / (A0 ** 2 * Q1) + pi0 * pi1 * B0 ** 2 / A0 ** 2
            + it.var_I / (Q1 ** 2 * A0 ** 2))
    var1 = (1 - A0) / (Q1 * A0) + var0
    return DetectorStats(mu0, 1.0 + mu0, var0, var1, "zf_ex")


def detector_stats_in(probs: SlotProbabilities, Q1, pi1, sigma_n, slot=None) -> DetectorStats:
    A0, B0 = probs.A0, probs.B0
    delta = A0 ** 2 - B0 ** 2
    if not delta > 0:
        raise RankDeficiencyError(f"mean channel with ILI is singular (A0^2 - B0^2 = {delta})")
    it = interference_stats(probs, Q1, pi1, sigma_n, slot)
    mu0 = (A0 - B0) * it.mu_I / (Q1 * delta)
    var0 = ((A0 / delta) ** 2 * pi1 * B0 * (1 - B0) / Q1
            + (B0 / delta) ** 2 * pi1 * A0 * (1 - A0) / Q1
            + (A0 ** 2 + B0 ** 2) / (Q1 ** 2 * delta ** 2) * it.var_I)
    var1 = (A0 ** 3 * (1 - A0) + B0 ** 3 * (1 - B0)) / (Q1 * delta ** 2) + var0
    return DetectorStats(mu0, 1.0 + mu0, var0, var1, "zf_in")


def detector_stats_adaptive(probs: SlotProbabilities, Q1, pi1, sigma_n, slot=None) -> DetectorStats:
    return detector_stats_ex(probs, Q1, pi1, sigma_n, slot).scaled(probs.A0, "adaptive")
