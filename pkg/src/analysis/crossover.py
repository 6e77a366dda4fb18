"""
Comparison of the two practical ZF detectors through their bit-0 variances.

h(Q1) = Q1^2 (var_ex0 - var_in0) = a Q1^2 + b Q1 + c. Under acceptable
interference (A0^2 - 2 B0^2 > 0 and (A0^2 - 2 B0^2)/3 > sum_k>=1 A_k^2 + B_k^2)
a > 0 and c < 0, so h has one positive root T; above T the ILI-aware
inverse has the smaller variance.
"""
from dataclasses import dataclass, field
import math
import numpy as np
import pandas as pd
from ..channel.model import SlotProbabilities, ChannelModelParams, slot_probs
from ..detection.stats import detector_stats_ex, detector_stats_in
from ..particles.topology import Topology
from ..utils.errors import NumericError
from ..utils.logger import warn

INTERP_Q1 = (10.0, 100.0, 1000.0)


@dataclass(frozen=True)
class InterferenceConditions:
    ili_margin: float  # A0^2 - 2 B0^2
    isi_margin: float  # (A0^2 - 2 B0^2)/3 - sum_k>=1 (A_k^2 + B_k^2)

    @property
    def ili_ok(self) -> bool:
        return self.ili_margin > 0

    @property
    def isi_ok(self) -> bool:
        return self.isi_margin > 0

    @property
    def acceptable(self) -> bool:
        return self.ili_ok and self.isi_ok


def acceptable_interference(probs: SlotProbabilities) -> InterferenceConditions:
    ili = probs.A0 ** 2 - 2 * probs.B0 ** 2
    s2 = float(np.sum(probs.A[1:] ** 2 + probs.B[1:] ** 2))
    return InterferenceConditions(float(ili), float(ili / 3 - s2))


def _g(A0, B0):
    # 1/A0^2 - (A0^2 + B0^2)/(A0^2 - B0^2)^2, always negative for A0 > B0 > 0
    delta = A0 ** 2 - B0 ** 2
    return -B0 ** 2 * (3 * A0 ** 2 - B0 ** 2) / (A0 ** 2 * delta ** 2)


def closed_form_coefficients(probs: SlotProbabilities, sigma_n, pi1=0.5) -> tuple[float, float, float]:
    A0, B0 = probs.A0, probs.B0
    A, B = probs.A[1:], probs.B[1:]
    g = _g(A0, B0)
    delta = A0 ** 2 - B0 ** 2
    pi0 = 1.0 - pi1
    s1 = float(np.sum(A * (1 - A) + B * (1 - B)))
    s2 = float(np.sum(A ** 2 + B ** 2))
    a = pi0 * pi1 * (B0 ** 2 / A0 ** 2 + s2 * g)
    b = pi1 * (B0 * (1 - B0) / A0 ** 2
               - (A0 ** 2 * B0 * (1 - B0) + B0 ** 2 * A0 * (1 - A0)) / delta ** 2
               + s1 * g)
    c = sigma_n ** 2 * g
    return a, b, c


@dataclass(frozen=True)
class QuadraticH:
    a: float
    b: float
    c: float
    root_positive: float | None
    conditions: InterferenceConditions = field(default=None)

    def __call__(self, Q1):
        Q1 = np.asarray(Q1, dtype=float)
        return self.a * Q1 ** 2 + self.b * Q1 + self.c


def h_direct(probs: SlotProbabilities, sigma_n, Q1, pi1=0.5) -> float:
    """Q1^2 (var_ex0 - var_in0) straight from the detector statistics."""
    ex = detector_stats_ex(probs, Q1, pi1, sigma_n)
    inn = detector_stats_in(probs, Q1, pi1, sigma_n)
    return Q1 ** 2 * (ex.var0 - inn.var0)


def _positive_root(a, b, c):
    disc = b * b - 4 * a * c
    if a == 0 or disc < 0:
        return None
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0:
        return None
    pos = [r for r in (q / a, c / q) if r > 0]
    return max(pos) if pos else None


def h_of_Q1(probs: SlotProbabilities, sigma_n, pi1=0.5, rtol=1e-9) -> QuadraticH:
    """
    Coefficients recovered by interpolating h at three powers, then checked
    against the closed forms of a and c.
    """
    cond = acceptable_interference(probs)
    if not cond.acceptable:
        warn(f"interference not acceptable (ILI margin {cond.ili_margin:.3g}, "
             f"ISI margin {cond.isi_margin:.3g}); positive root may not be unique")
    q = np.asarray(INTERP_Q1)
    vals = np.array([h_direct(probs, sigma_n, float(x), pi1) for x in q])
    a, b, c = np.linalg.solve(np.vander(q, 3), vals)
    a_cf, _, c_cf = closed_form_coefficients(probs, sigma_n, pi1)
    # h is a difference of two terms of this size; rounding scales with it
    scale = max(x ** 2 * detector_stats_ex(probs, float(x), pi1, sigma_n).var0 for x in q)
    checks = (("a", a, a_cf, scale / q[-1] ** 2), ("c", c, c_cf, scale))
    for name, got, want, size in checks:
        if not math.isclose(got, want, rel_tol=rtol, abs_tol=rtol * size):
            raise NumericError(f"interpolated {name} = {got!r} disagrees with closed form {want!r}")
    return QuadraticH(float(a), float(b), float(c), _positive_root(a, b, c), cond)


def threshold_sensitivity(params_pair: ChannelModelParams, params_cross: ChannelModelParams,
                          topology: Topology, t_s, sigma_n, K_values=range(2, 9), pi1=0.5) -> pd.DataFrame:
    rows = []
    for K in K_values:
        probs = slot_probs(params_pair, params_cross, topology, t_s, K)
        h = h_of_Q1(probs, sigma_n, pi1)
        rows.append({"K": K, "T_threshold": h.root_positive, "a": h.a, "b": h.b, "c": h.c,
                     "ili_ok": h.conditions.ili_ok, "isi_ok": h.conditions.isi_ok})
    return pd.DataFrame(rows)
