from dataclasses import dataclass
import numpy as np
import pandas as pd
from .framing import encode_message, decode_frame
from ..channel.model import SlotProbabilities
from ..detection.bank import detector_outputs
from ..detection.thresholds import decide
from ..link.config import TxConfig, NoiseConfig
from ..link.sim import simulate_link, probe_trace
from ..utils.errors import FrameError

S_ILI_CAP = 1e6


@dataclass
class DemoResult:
    text: str
    decoded: str | None
    error: str | None
    bit_errors: int
    n_bits: int
    n_slots: int
    decisions: pd.DataFrame

    @property
    def ber(self) -> float:
        return self.bit_errors / self.n_bits if self.n_bits else 0.0

    @property
    def ok(self) -> bool:
        return self.decoded == self.text.upper()


def end_to_end_demo(text, tx: TxConfig, probs: SlotProbabilities, noise: NoiseConfig,
                    detector="zf_in", rng=None, streams=2, eta_f=0.2, genie_threshold=0.5) -> DemoResult:
    """encode -> simulate_link -> detect -> decode. streams=1 runs the SISO reference."""
    rng = rng or np.random.default_rng(0)
    frame = encode_message(text, streams=streams)
    bits = frame.bits()
    if streams == 1:
        probs = probs.siso()
        bits = np.vstack([bits, np.zeros_like(bits)])
    trace = simulate_link(bits, tx, probs, noise, rng)
    out, th, _ = detector_outputs(detector, trace, tx, probs, noise.sigma_n, eta_f, genie_threshold)
    hat, _ = decide(out, th)
    hat = hat.T[:streams]
    sent = bits[:streams]
    try:
        decoded, err = decode_frame(hat), None
    except FrameError as exc:
        decoded, err = None, str(exc)
    dec = pd.DataFrame({"slot": np.arange(bits.shape[1]), "detector": detector,
                        **{f"bit{s + 1}_hat": hat[s] for s in range(streams)},
                        **{f"bit{s + 1}": sent[s] for s in range(streams)}})
    return DemoResult(text.upper(), decoded, err, int(np.count_nonzero(hat != sent)),
                      int(sent.size), int(bits.shape[1]), dec)


def s_ili_ratio(y_probe, cap=S_ILI_CAP) -> float:
    """
    Reception at Rx1 over reception at Rx2 for probe slots with x1 = 1, x2 = 0,
    as a ratio of sums over the probes. A non-positive Rx2 total returns `cap`.
    """
    y = np.asarray(y_probe, dtype=float).reshape(-1, 2)
    den = y[:, 1].sum()
    if den <= 0:
        return cap
    return float(min(y[:, 0].sum() / den, cap))


def measure_s_ili(n_probes, tx: TxConfig, probs: SlotProbabilities, noise: NoiseConfig, rng) -> float:
    return s_ili_ratio(probe_trace(n_probes, tx, probs, noise, rng))
