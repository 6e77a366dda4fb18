from dataclasses import dataclass
from ..utils.errors import DomainError


@dataclass(frozen=True)
class TxConfig:
    Q1: int = 700
    pi1: float = 0.5
    t_s: float = 0.08
    n_bits: int = 50_000
    Q0: int = 0  # BCSK: bit-0 releases nothing

    def __post_init__(self):
        bad = []
        if self.Q1 < 1: bad.append(f"Q1 must be >= 1 (got {self.Q1})")
        if self.Q0 != 0: bad.append("Q0 is fixed at 0")
        if not 0 <= self.pi1 <= 1: bad.append(f"pi1 must lie in [0, 1] (got {self.pi1})")
        if not self.t_s > 0: bad.append(f"t_s must be > 0 (got {self.t_s})")
        if self.n_bits < 1: bad.append("n_bits must be >= 1")
        if bad:
            raise DomainError("; ".join(bad))

    @property
    def pi0(self) -> float:
        return 1.0 - self.pi1


@dataclass(frozen=True)
class NoiseConfig:
    sigma_n: float = 10.0

    def __post_init__(self):
        if not self.sigma_n >= 0:
            raise DomainError(f"sigma_n must be >= 0 (got {self.sigma_n})")
