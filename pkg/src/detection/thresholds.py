"""
MAP decision thresholds for Gaussian-approximated detector outputs.

With equal priors and X0 ~ N(mu0, s0^2), X1 ~ N(mu1, beta * s0^2) the
crossing points u = eta - mu0 of the two densities solve

    (beta - 1) u^2 + 2 delta u - (delta^2 + s0^2 beta ln beta) = 0,   delta = mu1 - mu0.

The root between the means is eta_plus. For beta > 1 the second root lies
below mu0 and becomes eta_minus; beta = 1 leaves the single midpoint.
"""
from dataclasses import dataclass
import math
import numpy as np
from .stats import DetectorStats
from ..utils.errors import DomainError


@dataclass(frozen=True)
class ThresholdPair:
    """bit-0 iff eta_minus < y < eta_plus, bit-1 otherwise."""
    eta_minus: float
    eta_plus: float

    def __post_init__(self):
        if not self.eta_minus < self.eta_plus:
            raise DomainError(f"eta_minus {self.eta_minus} must be below eta_plus {self.eta_plus}")

    @classmethod
    def single(cls, eta: float) -> "ThresholdPair":
        return cls(-math.inf, float(eta))


def threshold_pair(stats: DetectorStats) -> ThresholdPair:
    delta = stats.mu1 - stats.mu0
    if stats.var0 <= 0:
        # noiseless bit-0 output: no density crossing, split the means
        return ThresholdPair.single(stats.mu0 + delta / 2)
    beta = stats.var1 / stats.var0
    if beta < 1:
        raise DomainError(f"variance ratio must be >= 1 (got {beta})")
    if beta == 1:
        return ThresholdPair.single(stats.mu0 + delta / 2)
    c = delta ** 2 + stats.var0 * beta * math.log(beta)
    root = math.sqrt(delta ** 2 + (beta - 1) * c)
    u_plus = c / (root + delta)
    u_minus = -(delta + root) / (beta - 1)
    return ThresholdPair(stats.mu0 + u_minus, stats.mu0 + u_plus)


def log_density_gap(eta: float, stats: DetectorStats) -> float:
    """log N(eta; mu0, var0) - log N(eta; mu1, var1); zero at a crossing point."""
    l0 = -0.5 * math.log(2 * math.pi * stats.var0) - (eta - stats.mu0) ** 2 / (2 * stats.var0)
    l1 = -0.5 * math.log(2 * math.pi * stats.var1) - (eta - stats.mu1) ** 2 / (2 * stats.var1)
    return l0 - l1


def decide(outputs, thresholds: ThresholdPair) -> tuple[np.ndarray, int]:
    """Apply the two-threshold rule; returns bits and how many fired on the lower threshold."""
    y = np.asarray(outputs, dtype=float)
    upper = y >= thresholds.eta_plus
    lower = y <= thresholds.eta_minus
    return (upper | lower).astype(np.int8), int(np.count_nonzero(lower))


def scan_threshold(outputs, bits, lo=-0.5, hi=1.5, step=1e-3) -> tuple[float, float]:
    """
    Brute-force single upper threshold (bit-1 iff y >= eta) on a labelled trace.
    Returns (eta, error rate); eta is the centre of the first run of minimisers.
    """
    y = np.asarray(outputs, dtype=float).ravel()
    b = np.asarray(bits).ravel()
    if y.shape != b.shape:
        raise DomainError("outputs and bits differ in shape")
    n = int(round((hi - lo) / step))
    grid = lo + step * np.arange(n + 1)
    y0, y1 = np.sort(y[b == 0]), np.sort(y[b == 1])
    errors = (y0.size - np.searchsorted(y0, grid, side="left")) + np.searchsorted(y1, grid, side="left")
    best = errors.min()
    first = int(np.argmax(errors == best))
    last = first
    while last + 1 <= n and errors[last + 1] == best:
        last += 1
    return float(grid[(first + last) // 2]), float(best / y.size)
