"""
Hitting-probability model of the 2x2 channel.

    F(t) = b1 * r_r / (d_ij + r_r) * erfc(d_ij / ((4D)^b2 * t^b3))

b1 = 1, b2 = b3 = 1/2 is the exact single-receiver (SISO) solution.
"""
from dataclasses import dataclass, field, replace
from typing import Literal
import numpy as np
from .special import erfc
from ..particles.topology import Topology
from ..utils.errors import DomainError

LinkClass = Literal["pair", "cross"]
B_UPPER = 1.5


def _scalar_or_array(x, like):
    return float(x) if np.ndim(like) == 0 else x


def _times(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be >= 0")
    return t


def siso_cdf(t, r_r, d, D):
    if not (r_r > 0 and d > 0 and D > 0):
        raise DomainError(f"siso_cdf needs r_r, d, D > 0 (got {r_r}, {d}, {D})")
    tt = _times(t)
    with np.errstate(divide="ignore"):
        z = np.where(tt > 0, d / np.sqrt(4.0 * D * np.where(tt > 0, tt, 1.0)), np.inf)
    return _scalar_or_array(r_r / (r_r + d) * erfc(z), t)


def cross_distance(topology: Topology) -> float:
    return topology.d12


@dataclass(frozen=True)
class ChannelModelParams:
    b1: float
    b2: float
    b3: float
    link_class: LinkClass = "pair"
    topology: Topology = field(default_factory=Topology)

    def __post_init__(self):
        if self.link_class not in ("pair", "cross"):
            raise DomainError(f"unknown link class {self.link_class!r}")
        if not all(b > 0 for b in (self.b1, self.b2, self.b3)):
            raise DomainError(f"b-parameters must be positive (got {self.as_tuple()})")

    def as_tuple(self):
        return (self.b1, self.b2, self.b3)

    @property
    def in_range(self) -> bool:
        return all(0 < b <= B_UPPER for b in self.as_tuple())

    @property
    def distance(self) -> float:
        return self.topology.d if self.link_class == "pair" else cross_distance(self.topology)

    def cdf(self, t):
        return model_cdf(t, self, self.distance)

    def limit(self) -> float:
        """F(t -> inf) = b1 * r_r / (d_ij + r_r)."""
        r = self.topology.r_r
        return self.b1 * r / (self.distance + r)

    def to_config(self) -> dict:
        return {"link_class": self.link_class, "b1": self.b1, "b2": self.b2, "b3": self.b3,
                "topology": self.topology.to_dict()}

    @classmethod
    def from_config(cls, section: dict) -> "ChannelModelParams":
        topo = Topology(**section.get("topology", {}))
        return cls(float(section["b1"]), float(section["b2"]), float(section["b3"]),
                   section.get("link_class", "pair"), topo)


# fitted values for d=2, r_r=4, h=2, D=50
REFERENCE_PAIR_PARAMS = ChannelModelParams(0.9155, 0.5236, 0.5476, "pair")
REFERENCE_CROSS_PARAMS = ChannelModelParams(0.2981, 0.5315, 0.5363, "cross")


def _z(tt, b2, b3, D, d_ij):
    with np.errstate(divide="ignore"):
        return np.where(tt > 0, d_ij / ((4.0 * D) ** b2 * np.where(tt > 0, tt, 1.0) ** b3), np.inf)


def model_values(t, b, topology: Topology, d_ij: float):
    """Model CDF for a raw coefficient vector b = (b1, b2, b3)."""
    b1, b2, b3 = b
    r = topology.r_r
    return b1 * r / (d_ij + r) * erfc(_z(t, b2, b3, topology.D, d_ij))


def model_cdf(t, params: ChannelModelParams, d_ij: float):
    out = model_values(_times(t), params.as_tuple(), params.topology, d_ij)
    return _scalar_or_array(out, t)


def model_jacobian(t, b, topology: Topology, d_ij: float) -> np.ndarray:
    """dF/d(b1, b2, b3) on the grid t, shape (len(t), 3)."""
    b1, b2, b3 = b
    tt = _times(np.atleast_1d(t))
    r = topology.r_r
    g = r / (d_ij + r)
    z = _z(tt, b2, b3, topology.D, d_ij)
    pos = tt > 0
    zf = np.where(pos, z, 0.0)
    # -dF/dz
    slope = b1 * g * 2.0 / np.sqrt(np.pi) * np.exp(-zf ** 2) * pos
    jac = np.empty((tt.size, 3))
    jac[:, 0] = g * erfc(z)
    jac[:, 1] = slope * zf * np.log(4.0 * topology.D)
    jac[:, 2] = slope * zf * np.log(np.where(pos, tt, 1.0))
    return jac


@dataclass(frozen=True)
class SlotProbabilities:
    """A[k], B[k]: pair / cross hitting probability in the k-th slot after release."""
    A: np.ndarray
    B: np.ndarray
    t_s: float
    K: int

    def __post_init__(self):
        object.__setattr__(self, "A", np.asarray(self.A, dtype=float))
        object.__setattr__(self, "B", np.asarray(self.B, dtype=float))
        if self.A.shape != (self.K + 1,) or self.B.shape != (self.K + 1,):
            raise DomainError(f"A and B need K+1 = {self.K + 1} entries")
        if np.any((self.A < 0) | (self.A > 1)) or np.any((self.B < 0) | (self.B > 1)):
            raise DomainError("slot probabilities must lie in [0, 1]")

    @property
    def A0(self) -> float:
        return float(self.A[0])

    @property
    def B0(self) -> float:
        return float(self.B[0])

    @property
    def full_rank(self) -> bool:
        return self.A0 ** 2 > self.B0 ** 2

    def truncated(self, K: int) -> "SlotProbabilities":
        if not 0 <= K <= self.K:
            raise DomainError(f"cannot truncate memory {self.K} to {K}")
        return SlotProbabilities(self.A[:K + 1], self.B[:K + 1], self.t_s, K)

    def siso(self) -> "SlotProbabilities":
        """Single-link reference: cross-link terms removed."""
        return replace(self, B=np.zeros_like(self.B))


def slot_probs(params_pair: ChannelModelParams, params_cross: ChannelModelParams,
               topology: Topology, t_s: float, K: int) -> SlotProbabilities:
    if not t_s > 0:
        raise DomainError(f"t_s must be > 0 (got {t_s})")
    if K < 0:
        raise DomainError(f"K must be >= 0 (got {K})")
    edges = np.arange(K + 2) * t_s
    pair = replace(params_pair, topology=topology)
    cross = replace(params_cross, topology=topology)
    A = np.diff(model_cdf(edges, pair, topology.d))
    B = np.diff(model_cdf(edges, cross, cross_distance(topology)))
    return SlotProbabilities(A, B, t_s, K)


def siso_probs(probs: SlotProbabilities) -> SlotProbabilities:
    return probs.siso()
