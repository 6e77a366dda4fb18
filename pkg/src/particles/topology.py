import math
from dataclasses import dataclass
import numpy as np
from ..utils.errors import DomainError


@dataclass(frozen=True)
class Topology:
    """
    2x2 layout: point transmitters and spherical absorbing receivers on a
    rectangle in the x-y plane.
      - Tx1 = (0, 0, 0), Tx2 = (0, 2*r_r + h, 0)
      - Rx_i center at x = d + r_r on the same row as Tx_i
    h = inf places the second pair at infinity (single-sphere layout).
    Units: um and um^2/s.
    """
    d: float = 2.0
    h: float = 2.0
    r_r: float = 4.0
    D: float = 50.0

    def __post_init__(self):
        bad = []
        if not self.d > 0: bad.append(f"d must be > 0 (got {self.d})")
        if not self.h >= 0: bad.append(f"h must be >= 0 (got {self.h})")
        if not self.r_r > 0: bad.append(f"r_r must be > 0 (got {self.r_r})")
        if not self.D >= 0: bad.append(f"D must be >= 0 (got {self.D})")
        if bad:
            raise DomainError("; ".join(bad))

    @property
    def single_sphere(self) -> bool:
        return math.isinf(self.h)

    @property
    def row_gap(self) -> float:
        return 2 * self.r_r + self.h

    @property
    def d11(self) -> float:
        return self.d

    @property
    def d12(self) -> float:
        return math.hypot(self.d + self.r_r, self.row_gap) - self.r_r

    def tx_position(self, source: int) -> np.ndarray:
        if source == 1:
            return np.zeros(3)
        if source == 2 and not self.single_sphere:
            return np.array([0.0, self.row_gap, 0.0])
        raise DomainError(f"no transmitter {source} in this topology")

    def rx_centers(self) -> np.ndarray:
        """Centers of the receive spheres that exist, one row per sink."""
        x = self.d + self.r_r
        if self.single_sphere:
            return np.array([[x, 0.0, 0.0]])
        return np.array([[x, 0.0, 0.0], [x, self.row_gap, 0.0]])

    def to_dict(self) -> dict:
        return {"d": self.d, "h": self.h, "r_r": self.r_r, "D": self.D}


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.001
    t_max: float = 1.5
    molecules_per_emission: int = 5000
    replications: int = 500
    rng_seed: int = 0
    # Brownian-bridge hit test between step ends; off = step-end absorption only
    crossing_correction: bool = False

    def __post_init__(self):
        bad = []
        if not self.dt > 0: bad.append(f"dt must be > 0 (got {self.dt})")
        if not self.t_max >= self.dt: bad.append(f"t_max must be >= dt (got {self.t_max})")
        if self.molecules_per_emission < 1: bad.append("molecules_per_emission must be >= 1")
        if self.replications < 1: bad.append("replications must be >= 1")
        if bad:
            raise DomainError("; ".join(bad))

    @property
    def n_steps(self) -> int:
        return int(math.floor(self.t_max / self.dt + 1e-9))

    def time_grid(self) -> np.ndarray:
        return np.arange(1, self.n_steps + 1) * self.dt
