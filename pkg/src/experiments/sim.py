"""
BER experiments over (Q1, t_s) points.

Each point draws `replications` independent traces of `n_bits` per antenna
and runs every configured detector on the same trace, so the adaptive and
zf_ex columns are directly comparable. Seeds are derived from
(seed, stage, point, replication), so results do not depend on --jobs.
"""
from concurrent.futures import ProcessPoolExecutor
import time
import numpy as np
import pandas as pd
from .config import ExperimentConfig
from .scenarios import rng_for, ber_points, STAGE_BER, STAGE_GENIE, STAGE_FIXED, STAGE_GGD
from ..analysis.ggd import fit_ggd, error_probability, ggd_ks_distance, gaussian_ks_distance
from ..analysis.metrics import group_ber, throughput
from ..channel.model import SlotProbabilities, slot_probs
from ..detection.bank import detector_outputs, analytic_stats
from ..detection.detectors import genie_outputs, adaptive_outputs, zf_ex_outputs
from ..detection.thresholds import decide, scan_threshold, threshold_pair
from ..link.config import TxConfig, NoiseConfig
from ..link.sim import simulate_link, random_bits, mean_channel_matrices
from ..utils.logger import log


def point_probs(cfg: ExperimentConfig, t_s, K=None) -> SlotProbabilities:
    pair, cross = cfg.channel.params(cfg.topology)
    return slot_probs(pair, cross, cfg.topology, t_s, cfg.link.K if K is None else K)


def simulate_trace(tx: TxConfig, probs, noise: NoiseConfig, n_bits, rng):
    return simulate_link(random_bits(n_bits, tx.pi1, rng), tx, probs, noise, rng)


def calibrate_genie_threshold(tx: TxConfig, probs, noise: NoiseConfig, n_bits, rng) -> float:
    """Brute-force threshold of the genie detector on a held-out trace."""
    trace = simulate_trace(tx, probs, noise, n_bits, rng)
    _, H_in = mean_channel_matrices(probs, tx.Q1)
    out, _ = genie_outputs(trace.y, trace.realized_H, H_in)
    eta, _ = scan_threshold(out, trace.x, lo=-0.5, hi=1.5, step=1e-3)
    return eta


def run_ber_point(job) -> list[dict]:
    """One replication of one (Q1, t_s) point for every detector."""
    seed, point, rep, tx, probs, noise, detectors, eta_f, genie_eta = job
    t0 = time.perf_counter()
    rng = rng_for(seed, STAGE_BER, point, rep)
    trace = simulate_trace(tx, probs, noise, tx.n_bits, rng)
    t_sim = time.perf_counter() - t0
    rows = []
    for det in detectors:
        t1 = time.perf_counter()
        out, th, n_sing = detector_outputs(det, trace, tx, probs, noise.sigma_n, eta_f, genie_eta)
        hat, lower = decide(out, th)
        errors = int(np.count_nonzero(hat != trace.x))
        rows.append({"detector": det, "Q1": tx.Q1, "t_s": tx.t_s, "replication": rep,
                     "errors": errors, "n_bits": int(trace.x.size), "lower_triggers": lower,
                     "singular_slots": n_sing, "eta_minus": th.eta_minus, "eta_plus": th.eta_plus,
                     "runtime_s": t_sim / len(detectors) + time.perf_counter() - t1})
    return rows


def ber_jobs(cfg: ExperimentConfig):
    link, noise = cfg.link, cfg.link.noise()
    jobs = []
    for point, Q1, t_s in ber_points(link):
        tx = link.tx(Q1, t_s)
        probs = point_probs(cfg, t_s)
        genie_eta = 0.5
        if "genie" in cfg.detectors:
            genie_eta = calibrate_genie_threshold(tx, probs, noise, link.genie_calibration_bits,
                                                  rng_for(cfg.seed, STAGE_GENIE, point))
        for rep in range(link.replications):
            jobs.append((cfg.seed, point, rep, tx, probs, noise, list(cfg.detectors), link.eta_f, genie_eta))
    return jobs


def run_ber_experiment(cfg: ExperimentConfig) -> tuple[pd.DataFrame, pd.DataFrame]:
    """Raw per-replication rows and the grouped (detector, Q1, t_s) table with 95% CIs."""
    cfg = cfg.scaled()
    jobs = ber_jobs(cfg)
    rows, total = [], len(jobs)
    step = max(1, total // 20)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = ex.map(run_ber_point, jobs)
            for i, r in enumerate(results, 1):
                rows.extend(r)
                if i % step == 0 or i == total:
                    log(f"{i}/{total} runs...", tag="ber")
    else:
        for i, job in enumerate(jobs, 1):
            rows.extend(run_ber_point(job))
            if i % step == 0 or i == total:
                log(f"{i}/{total} runs...", tag="ber")
    raw = pd.DataFrame(rows).sort_values(["detector", "t_s", "Q1", "replication"]).reset_index(drop=True)
    return raw, group_ber(raw)


def calibrate_fixed_threshold(cfg: ExperimentConfig, t_s=None, n_bits=None) -> tuple[float, pd.DataFrame]:
    """
    Per-Q1 optimum of y/Q1 >= eta scanned over [0, 1] at 1e-3, averaged over
    the configured Q1 values.
    """
    link, noise = cfg.link, cfg.link.noise()
    t_s = link.ts_values[0] if t_s is None else t_s
    n_bits = n_bits or link.n_bits
    probs = point_probs(cfg, t_s)
    rows = []
    for i, Q1 in enumerate(link.q1_values):
        tx = link.tx(Q1, t_s)
        trace = simulate_trace(tx, probs, noise, n_bits, rng_for(cfg.seed, STAGE_FIXED, i))
        eta, err = scan_threshold(adaptive_outputs(trace.y, Q1), trace.x, lo=0.0, hi=1.0, step=1e-3)
        rows.append({"Q1": Q1, "t_s": t_s, "eta_opt": eta, "ber_at_opt": err})
    df = pd.DataFrame(rows)
    return float(df["eta_opt"].mean()), df


def zf_ex_samples(cfg: ExperimentConfig, Q1, t_s, n_slots, K=None, index=0):
    """zf_ex outputs split by transmitted bit, pooled over both antennas."""
    link, noise = cfg.link, cfg.link.noise()
    probs = point_probs(cfg, t_s, K)
    tx = link.tx(Q1, t_s)
    trace = simulate_trace(tx, probs, noise, n_slots, rng_for(cfg.seed, STAGE_GGD, index))
    H_ex, _ = mean_channel_matrices(probs, Q1)
    out = zf_ex_outputs(trace.y, H_ex)
    return out[trace.x == 0], out[trace.x == 1], probs, trace


def run_ggd_table(cfg: ExperimentConfig, t_s=None, n_slots=200_000, K=None) -> pd.DataFrame:
    """
    Shape parameters of the zf_ex outputs per Q1, the GGD error prediction at
    the analytic threshold, the simulated BER there, and KS distances of the
    GGD and moment-matched Gaussian fits.
    """
    link = cfg.link
    t_s = link.ts_values[0] if t_s is None else t_s
    rows = []
    for i, Q1 in enumerate(link.q1_values):
        x0, x1, probs, _ = zf_ex_samples(cfg, Q1, t_s, n_slots, K, index=i)
        g0, g1 = fit_ggd(x0), fit_ggd(x1)
        tx = link.tx(Q1, t_s)
        th = threshold_pair(analytic_stats("zf_ex", probs, tx, link.sigma_n))
        sim_ber = (np.count_nonzero(decide(x0, th)[0]) + np.count_nonzero(decide(x1, th)[0] == 0)) / (x0.size + x1.size)
        rows.append({"Q1": Q1, "t_s": t_s, "K": probs.K,
                     "beta0": g0.beta, "beta1": g1.beta, "alpha0": g0.alpha, "alpha1": g1.alpha,
                     "mu0": g0.mu, "mu1": g1.mu, "eta_plus": th.eta_plus,
                     "pe_ggd": error_probability(g0, g1, th.eta_plus, link.pi1), "ber_sim": sim_ber,
                     "ks_ggd0": ggd_ks_distance(x0, g0), "ks_gauss0": gaussian_ks_distance(x0),
                     "ks_ggd1": ggd_ks_distance(x1, g1), "ks_gauss1": gaussian_ks_distance(x1)})
        log(f"Q1={Q1}: beta0={g0.beta:.2f} beta1={g1.beta:.2f}", tag="ggd")
    return pd.DataFrame(rows)


def run_siso_throughput(cfg: ExperimentConfig, Q1, t_s, detector="zf_in", n_bits=None, index=0) -> dict:
    """BER and caption-formula throughput of the 2x2 link against a single link."""
    link, noise = cfg.link, cfg.link.noise()
    n_bits = n_bits or link.n_bits
    tx = link.tx(Q1, t_s)
    probs = point_probs(cfg, t_s)
    rng = rng_for(cfg.seed, STAGE_BER, 10_000 + index, 0)
    mimo = simulate_trace(tx, probs, noise, n_bits, rng)
    out, th, _ = detector_outputs(detector, mimo, tx, probs, noise.sigma_n, link.eta_f)
    ber_mimo = float(np.mean(decide(out, th)[0] != mimo.x))

    siso_p = probs.siso()
    bits = random_bits(n_bits, tx.pi1, rng)
    bits[1] = 0
    siso = simulate_link(bits, tx, siso_p, noise, rng)
    out, th, _ = detector_outputs(detector, siso, tx, siso_p, noise.sigma_n, link.eta_f)
    ber_siso = float(np.mean(decide(out, th)[0][:, 0] != siso.x[:, 0]))
    tp_mimo, tp_siso = throughput(1, 2, t_s, ber_mimo), throughput(1, 1, t_s, ber_siso)
    return {"detector": detector, "Q1": Q1, "t_s": t_s, "ber_mimo": ber_mimo, "ber_siso": ber_siso,
            "throughput_mimo": tp_mimo, "throughput_siso": tp_siso, "ratio": tp_mimo / tp_siso}
