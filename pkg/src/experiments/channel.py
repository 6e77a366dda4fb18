from dataclasses import dataclass, replace
from .config import ExperimentConfig
from ..channel.fitting import fit_model, FitResult
from ..channel.model import cross_distance
from ..particles.brownian import simulate_replications
from ..particles.cdf import EmpiricalCdf, estimate_cdfs, pool_symmetric
from ..particles.topology import Topology
from ..utils.logger import log, warn


@dataclass
class ChannelRun:
    records: list
    cdfs: tuple           # F11, F12, F21, F22
    pair: EmpiricalCdf    # F11 pooled with F22
    cross: EmpiricalCdf   # F12 pooled with F21


def pooled(cdfs) -> tuple[EmpiricalCdf, EmpiricalCdf]:
    f11, f12, f21, f22 = cdfs
    return pool_symmetric(f11, f22), pool_symmetric(f12, f21)


def run_channel_simulation(cfg: ExperimentConfig) -> ChannelRun:
    topo, sim = cfg.topology, replace(cfg.sim, rng_seed=cfg.seed)
    if topo.D == 0:
        warn("D = 0: molecules never move, every CDF is zero")
    total = sim.replications * (1 if topo.single_sphere else 2)
    step = max(1, total // 10)

    def progress(i, n):
        if i % step == 0 or i == n:
            log(f"{i}/{n} emissions...", tag="channel")

    records = simulate_replications(topo, sim, jobs=cfg.jobs, progress=progress)
    n_emit = sim.molecules_per_emission * sim.replications
    cdfs = estimate_cdfs(records, n_emit, sim.time_grid())
    if topo.single_sphere:
        return ChannelRun(records, cdfs, cdfs[0], cdfs[1])
    pair, cross = pooled(cdfs)
    return ChannelRun(records, cdfs, pair, cross)


def fit_channel(pair: EmpiricalCdf, cross: EmpiricalCdf, topology: Topology) -> tuple[FitResult, FitResult]:
    fp = fit_model(pair, topology, topology.d, "pair")
    fc = fit_model(cross, topology, cross_distance(topology), "cross")
    for f in (fp, fc):
        b = ", ".join(f"{v:.4f}" for v in f.params.as_tuple())
        log(f"{f.params.link_class}: b = ({b}) rms {f.rms:.2e} after {f.iterations} evaluations"
            + ("" if f.converged else " [not converged]"), tag="fit")
        if not f.in_range:
            warn(f"{f.params.link_class} fit outside (0, 1.5]: {f.params.as_tuple()}")
    return fp, fc


def fit_topology(cfg: ExperimentConfig, topology: Topology) -> tuple[FitResult, FitResult]:
    """Particle runs for one topology at the configured sizes, then both fits."""
    log(f"d={topology.d:g} r_r={topology.r_r:g} h={topology.h:g}", tag="channel")
    run = run_channel_simulation(replace(cfg, topology=topology))
    return fit_channel(run.pair, run.cross, topology)
