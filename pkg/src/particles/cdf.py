from dataclasses import dataclass
import numpy as np
import pandas as pd
from ..utils.errors import DomainError, GridMismatchError
from ..utils.io import write_csv, read_csv

# (source, sink) behind F11, F12, F21, F22; F_ij is Tx_j -> Rx_i
LINKS = ((1, 1), (2, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class EmpiricalCdf:
    time_grid: np.ndarray
    fraction: np.ndarray
    n_emitted: int

    def __post_init__(self):
        object.__setattr__(self, "time_grid", np.asarray(self.time_grid, dtype=float))
        object.__setattr__(self, "fraction", np.asarray(self.fraction, dtype=float))
        if self.time_grid.shape != self.fraction.shape:
            raise DomainError("time_grid and fraction differ in length")

    def __len__(self):
        return len(self.time_grid)

    def kolmogorov_distance(self, fn) -> float:
        """sup |F_emp(t) - fn(t)| over the grid."""
        return float(np.max(np.abs(self.fraction - np.asarray(fn(self.time_grid)))))


def _check_grid(time_grid):
    grid = np.asarray(time_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("time grid must be a nonempty 1-D array")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("time grid must be strictly ascending")
    return grid


def estimate_cdfs(records, n_emitted_per_source, time_grid) -> tuple[EmpiricalCdf, ...]:
    """
    Empirical hitting CDFs (F11, F12, F21, F22); F_ij counts molecules from
    Tx_j absorbed at Rx_i.
    fraction(t) = #records with hit_time <= t / molecules emitted by that source.
    """
    grid = _check_grid(time_grid)
    if isinstance(n_emitted_per_source, dict):
        n_emit = dict(n_emitted_per_source)
    else:
        n_emit = {1: int(n_emitted_per_source), 2: int(n_emitted_per_source)}
    if any(v < 1 for v in n_emit.values()):
        raise DomainError("emission counts must be >= 1")

    times = {link: [] for link in LINKS}
    for rec in records:
        times[(rec.source, rec.sink)].append(rec.hit_time)
    out = []
    for src, sink in LINKS:
        if src not in n_emit:
            out.append(EmpiricalCdf(grid, np.zeros_like(grid), 0))
            continue
        t = np.sort(np.asarray(times[(src, sink)], dtype=float))
        frac = np.searchsorted(t, grid, side="right") / n_emit[src]
        out.append(EmpiricalCdf(grid, frac, n_emit[src]))
    return tuple(out)


def pool_symmetric(a: EmpiricalCdf, b: EmpiricalCdf) -> EmpiricalCdf:
    """Emission-weighted pointwise average of two mirror-image CDFs."""
    if a.time_grid.shape != b.time_grid.shape or not np.array_equal(a.time_grid, b.time_grid):
        raise GridMismatchError("cannot pool CDFs on different time grids")
    n = a.n_emitted + b.n_emitted
    if n == 0:
        raise DomainError("cannot pool two CDFs with no emitted molecules")
    frac = (a.fraction * a.n_emitted + b.fraction * b.n_emitted) / n
    return EmpiricalCdf(a.time_grid, frac, n)


def records_frame(records) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=["source", "sink", "hit_time_s"])


def cdfs_frame(cdfs) -> pd.DataFrame:
    f11, f12, f21, f22 = cdfs
    return pd.DataFrame({"t_s": f11.time_grid, "f11": f11.fraction, "f12": f12.fraction,
                         "f21": f21.fraction, "f22": f22.fraction})


def write_records_csv(path, records, header=None):
    return write_csv(records_frame(records), path, header)


def write_cdfs_csv(path, cdfs, header=None):
    header = dict(header or {})
    header.setdefault("n_emitted", cdfs[0].n_emitted)
    return write_csv(cdfs_frame(cdfs), path, header)


def read_cdfs_csv(path) -> tuple[EmpiricalCdf, ...]:
    df, header = read_csv(path)
    missing = [c for c in ("t_s", "f11", "f12", "f21", "f22") if c not in df.columns]
    if missing:
        raise DomainError(f"CDF file {path} lacks columns {missing}")
    n = int(header.get("n_emitted", 1))
    grid = df["t_s"].to_numpy()
    return tuple(EmpiricalCdf(grid, df[c].to_numpy(), n) for c in ("f11", "f12", "f21", "f22"))
