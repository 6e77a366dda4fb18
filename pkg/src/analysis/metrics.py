from dataclasses import replace
import numpy as np, pandas as pd
from scipy import stats
from ..channel.model import ChannelModelParams, model_cdf
from ..particles.topology import Topology
from ..utils.errors import DomainError, NumericError


def sir(params_pair: ChannelModelParams, params_cross: ChannelModelParams, topology: Topology, t_s):
    """
    Expected desired-slot arrivals over expected ISI + ILI arrivals of one release:
    F11(0, t_s) / (F11(t_s, inf) + F12(0, inf)).
    """
    t_s = np.asarray(t_s, dtype=float)
    if np.any(t_s <= 0):
        raise DomainError("t_s must be > 0")
    pair = replace(params_pair, topology=topology)
    cross = replace(params_cross, topology=topology)
    f11_ts = model_cdf(t_s, pair, topology.d)
    den = pair.limit() - f11_ts + cross.limit()
    if np.any(den <= 0):
        raise NumericError("SIR denominator vanished")
    out = f11_ts / den
    return float(out) if np.ndim(out) == 0 else out


def throughput(M, L, t_s, ber):
    if not 0 <= ber <= 1:
        raise DomainError(f"ber must lie in [0, 1] (got {ber})")
    return M * L / t_s * (1.0 - ber)


def ber_ci(errors, n_bits, level=0.95) -> tuple[float, float, float]:
    """Mean BER over replications with a Student-t confidence interval."""
    rates = np.asarray(errors, dtype=float) / np.asarray(n_bits, dtype=float)
    mean = float(rates.mean())
    if rates.size < 2:
        return mean, mean, mean
    half = float(stats.t.ppf(0.5 + level / 2, rates.size - 1) * rates.std(ddof=1) / np.sqrt(rates.size))
    return mean, max(0.0, mean - half), mean + half


def group_ber(raw: pd.DataFrame, keys=("detector", "Q1", "t_s")) -> pd.DataFrame:
    """Per-replication rows -> one row per (detector, Q1, t_s) with 95% CI."""
    keys = list(keys)
    rows = []
    for key, g in raw.groupby(keys, sort=True):
        mean, lo, hi = ber_ci(g["errors"], g["n_bits"])
        row = {**dict(zip(keys, key)), "ber": mean, "ci_low": lo, "ci_high": hi,
               "ber_std": float((g["errors"] / g["n_bits"]).std(ddof=1)) if len(g) > 1 else 0.0,
               "n": int(len(g)), "lower_triggers": int(g["lower_triggers"].sum()),
               "runtime_s": float(g["runtime_s"].sum())}
        if "singular_slots" in g:
            # n_bits covers both antennas, one genie inverse per slot
            row["singular_slots"] = int(g["singular_slots"].sum())
            row["singular_rate"] = row["singular_slots"] / (float(g["n_bits"].sum()) / 2)
        rows.append(row)
    return pd.DataFrame(rows)
