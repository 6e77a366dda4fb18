"""
Symbol-level 2x2 BCSK link.

For slot m and receiver i (j is the other antenna):

    y_i[m] = S_ii[0] x_i[m] + S_ij[0] x_j[m]
             + sum_{k=1..min(m,K)} (S_ii[k] x_i[m-k] + S_ij[k] x_j[m-k]) + n_i[m]

with S_ii[k] ~ Binomial(Q1, A_k), S_ij[k] ~ Binomial(Q1, B_k), all drawn
independently per slot, and n_i ~ N(0, sigma_n^2) added unclipped.
"""
from dataclasses import dataclass
import numpy as np
import pandas as pd
from .config import TxConfig, NoiseConfig
from ..channel.model import SlotProbabilities
from ..utils.errors import DomainError


def sample_arrivals(Q, p, rng):
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise DomainError("arrival probability must lie in [0, 1]")
    return rng.binomial(Q, p)


def random_bits(n: int, pi1: float, rng) -> np.ndarray:
    """(2, n) array of Bernoulli(pi1) bits, one row per transmit antenna."""
    return (rng.random((2, n)) < pi1).astype(np.int8)


@dataclass
class SlotObservation:
    y: np.ndarray           # (2,)
    realized_H: np.ndarray  # (2, 2) current-slot arrival counts S_ij[0]
    slot_index: int


@dataclass
class LinkTrace:
    """Columnar record of a run; row m is slot m."""
    x: np.ndarray           # (n, 2) transmitted bits
    y: np.ndarray           # (n, 2) received counts
    realized_H: np.ndarray  # (n, 2, 2)
    desired: np.ndarray     # (n, 2) S_ii[0] x_i
    ili: np.ndarray         # (n, 2) S_ij[0] x_j
    isi: np.ndarray         # (n, 2) past-slot arrivals from both antennas
    noise: np.ndarray       # (n, 2)

    def __len__(self):
        return len(self.y)

    def __getitem__(self, m) -> SlotObservation:
        return SlotObservation(self.y[m], self.realized_H[m], int(m))

    def observations(self):
        return [self[m] for m in range(len(self))]

    @property
    def interference(self) -> np.ndarray:
        """ISI plus noise, I_i[m]."""
        return self.isi + self.noise

    def to_frame(self) -> pd.DataFrame:
        H = self.realized_H
        return pd.DataFrame({
            "slot": np.arange(len(self)),
            "y1": self.y[:, 0], "y2": self.y[:, 1],
            "x1": self.x[:, 0], "x2": self.x[:, 1],
            "h11": H[:, 0, 0], "h12": H[:, 0, 1], "h21": H[:, 1, 0], "h22": H[:, 1, 1],
        })


def simulate_link(tx_bits, tx: TxConfig, probs: SlotProbabilities, noise: NoiseConfig, rng) -> LinkTrace:
    if len(tx_bits) != 2:
        raise DomainError("expected two bit sequences")
    if len(tx_bits[0]) != len(tx_bits[1]):
        raise DomainError(f"bit sequences differ in length ({len(tx_bits[0])} vs {len(tx_bits[1])})")
    x = np.asarray(tx_bits, dtype=np.int64).T
    n = x.shape[0]
    desired = np.zeros((n, 2)); ili = np.zeros((n, 2)); isi = np.zeros((n, 2))
    H = None
    for k in range(probs.K + 1):
        # P[i, j]: probability that a molecule of Tx_j lands at Rx_i in slot k
        P = np.array([[probs.A[k], probs.B[k]], [probs.B[k], probs.A[k]]])
        src = np.zeros_like(x)
        if k < n:
            src[k:] = x[:n - k]
        S = sample_arrivals(tx.Q1, np.broadcast_to(P, (n, 2, 2)), rng)
        contrib = S * src[:, None, :]
        if k == 0:
            H = S
            desired = np.einsum("mii->mi", contrib).astype(float)
            ili = contrib[:, [0, 1], [1, 0]].astype(float)
        else:
            isi += contrib.sum(axis=2)
    n_i = rng.normal(0.0, noise.sigma_n, size=(n, 2)) if noise.sigma_n > 0 else np.zeros((n, 2))
    y = desired + ili + isi + n_i
    return LinkTrace(x.astype(np.int8), y, H, desired, ili, isi, n_i)


def mean_channel_matrices(probs: SlotProbabilities, Q1) -> tuple[np.ndarray, np.ndarray]:
    if not probs.A0 > 0:
        raise DomainError("A0 must be > 0")
    A0, B0 = probs.A0, probs.B0
    H_ex = Q1 * A0 * np.eye(2)
    H_in = Q1 * np.array([[A0, B0], [B0, A0]])
    return H_ex, H_in


def probe_trace(n_probes: int, tx: TxConfig, probs: SlotProbabilities, noise: NoiseConfig, rng):
    """
    Bit-1 from Tx1 only, each probe followed by K silent slots so no probe
    sees another's tail. Returns the (n_probes, 2) receptions of the probe slots.
    """
    gap = probs.K + 1
    x1 = np.zeros(n_probes * gap, dtype=np.int8)
    x1[::gap] = 1
    trace = simulate_link([x1, np.zeros_like(x1)], tx, probs, noise, rng)
    return trace.y[::gap]
