"""Name-based dispatch over the five detectors, shared by sweeps and the protocol demo."""
from .detectors import adaptive_outputs, zf_ex_outputs, zf_in_outputs, genie_outputs
from .stats import detector_stats_ex, detector_stats_in, detector_stats_adaptive
from .thresholds import ThresholdPair, threshold_pair
from ..channel.model import SlotProbabilities
from ..link.config import TxConfig
from ..link.sim import LinkTrace, mean_channel_matrices
from ..utils.errors import DomainError

DETECTORS = ("fixed", "adaptive", "zf_ex", "zf_in", "genie")
ANALYTIC = ("adaptive", "zf_ex", "zf_in")


def analytic_stats(detector, probs: SlotProbabilities, tx: TxConfig, sigma_n):
    fn = {"adaptive": detector_stats_adaptive, "zf_ex": detector_stats_ex, "zf_in": detector_stats_in}
    if detector not in fn:
        raise DomainError(f"{detector!r} has no analytic output statistics")
    return fn[detector](probs, tx.Q1, tx.pi1, sigma_n)


def detector_outputs(detector, trace: LinkTrace, tx: TxConfig, probs: SlotProbabilities, sigma_n,
                     eta_f=0.2, genie_threshold=0.5):
    """(outputs, thresholds, singular-slot count) for one detector on a trace."""
    H_ex, H_in = mean_channel_matrices(probs, tx.Q1)
    if detector == "fixed":
        return adaptive_outputs(trace.y, tx.Q1), ThresholdPair.single(eta_f), 0
    if detector == "genie":
        out, singular = genie_outputs(trace.y, trace.realized_H, H_in)
        return out, ThresholdPair.single(genie_threshold), int(singular.sum())
    if detector not in ANALYTIC:
        raise DomainError(f"unknown detector {detector!r}; choose from {DETECTORS}")
    th = threshold_pair(analytic_stats(detector, probs, tx, sigma_n))
    if detector == "adaptive":
        return adaptive_outputs(trace.y, tx.Q1), th, 0
    if detector == "zf_ex":
        return zf_ex_outputs(trace.y, H_ex), th, 0
    return zf_in_outputs(trace.y, H_in), th, 0
