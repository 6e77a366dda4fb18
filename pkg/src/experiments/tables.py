"""Analytic tables: SIR over topologies, MAP thresholds, and the h(Q1) threshold T."""
import pandas as pd
from .channel import fit_topology
from .config import ExperimentConfig
from .scenarios import topology_grid
from .sim import point_probs
from ..analysis.metrics import sir
from ..analysis.crossover import h_of_Q1, threshold_sensitivity
from ..detection.bank import ANALYTIC, analytic_stats
from ..detection.thresholds import threshold_pair
from ..particles.topology import Topology


def topology_key(topo: Topology) -> tuple[float, float, float]:
    return float(topo.d), float(topo.r_r), float(topo.h)


def sir_sweep(cfg: ExperimentConfig, channels=None) -> pd.DataFrame:
    """
    SIR for every topology of the sweep grid and every symbol duration.
    `channels` maps (d, r_r, h) to fitted (pair, cross) params; missing
    topologies are simulated and fitted.
    """
    channels = dict(channels or {})
    rows = []
    for topo in topology_grid(cfg.sweep, D=cfg.topology.D):
        key = topology_key(topo)
        if key not in channels:
            fp, fc = fit_topology(cfg, topo)
            channels[key] = (fp.params, fc.params)
        pair, cross = channels[key]
        for t_s in cfg.sweep.sir_ts_values:
            rows.append({"d": topo.d, "r_r": topo.r_r, "h": topo.h, "t_s": float(t_s),
                         "b1_pair": pair.b1, "b2_pair": pair.b2, "b3_pair": pair.b3,
                         "b1_cross": cross.b1, "b2_cross": cross.b2, "b3_cross": cross.b3,
                         "sir": sir(pair, cross, topo, float(t_s))})
    return pd.DataFrame(rows)


def threshold_table(cfg: ExperimentConfig) -> tuple[pd.DataFrame, pd.DataFrame]:
    """
    (thresholds, T table). The first has eta_minus/eta_plus and the output
    moments per (detector, Q1, t_s); the second the coefficients of h and
    its positive root per (t_s, Q1), with the sign of h at that Q1.
    """
    link = cfg.link
    th_rows, h_rows = [], []
    for t_s in link.ts_values:
        probs = point_probs(cfg, t_s)
        h = h_of_Q1(probs, link.sigma_n, link.pi1)
        for Q1 in link.q1_values:
            tx = link.tx(Q1, t_s)
            for det in ANALYTIC:
                st = analytic_stats(det, probs, tx, link.sigma_n)
                th = threshold_pair(st)
                th_rows.append({"detector": det, "Q1": Q1, "t_s": t_s, "mu0": st.mu0, "mu1": st.mu1,
                                "var0": st.var0, "var1": st.var1, "beta_ratio": st.beta_ratio,
                                "eta_minus": th.eta_minus, "eta_plus": th.eta_plus})
            hq = float(h(Q1))
            h_rows.append({"t_s": t_s, "Q1": Q1, "T_threshold": h.root_positive, "a": h.a, "b": h.b,
                           "c": h.c, "h": hq, "lower_variance": "zf_in" if hq > 0 else "zf_ex",
                           "acceptable": h.conditions.acceptable})
    return pd.DataFrame(th_rows), pd.DataFrame(h_rows)


def sensitivity_table(cfg: ExperimentConfig) -> pd.DataFrame:
    pair, cross = cfg.channel.params(cfg.topology)
    frames = []
    for t_s in cfg.link.ts_values:
        df = threshold_sensitivity(pair, cross, cfg.topology, t_s, cfg.link.sigma_n,
                                   cfg.sweep.K_values, cfg.link.pi1)
        df.insert(0, "t_s", t_s)
        frames.append(df)
    return pd.concat(frames, ignore_index=True)
