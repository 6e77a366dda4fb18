"""
Brownian first-hitting simulation for the 2x2 topology.

Molecules start at a transmitter point and take independent Gaussian steps
(variance 2*D*dt per axis) until they end a step inside a receive sphere or
the horizon t_max runs out. Absorption removes the molecule, so each one
yields at most one HittingRecord.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple
import numpy as np
from .topology import Topology, SimConfig
from ..utils.errors import DomainError


class HittingRecord(NamedTuple):
    source: int
    sink: int
    hit_time: float


def substream(*entropy) -> np.random.Generator:
    """Counter-based generator keyed by an integer tuple (seed, replication, ...)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(entropy))))


def step_particle(pos, dt, D, rng):
    """One Brownian step for a point or an (n, 3) batch of points."""
    pos = np.asarray(pos, dtype=float)
    if dt <= 0:
        raise DomainError(f"dt must be > 0 (got {dt})")
    return pos + rng.normal(0.0, np.sqrt(2.0 * D * dt), size=pos.shape)


def simulate_emission(topology: Topology, source: int, config: SimConfig,
                      replication: int = 0, rng=None) -> list[HittingRecord]:
    tx = topology.tx_position(source)
    centers = topology.rx_centers()
    r = topology.r_r
    if np.any(np.linalg.norm(centers - tx, axis=1) <= r):
        raise DomainError(f"Tx{source} lies inside a receive sphere")
    if topology.D == 0:
        return []
    if rng is None:
        rng = substream(config.rng_seed, replication, source)

    n = config.molecules_per_emission
    sigma2 = 2.0 * topology.D * config.dt
    pos = np.tile(tx, (n, 1))
    alive = np.arange(n)
    hit_step = np.zeros(n, dtype=np.int64)
    hit_sink = np.zeros(n, dtype=np.int64)
    prev_gap = np.linalg.norm(pos[:, None, :] - centers[None], axis=2) - r

    for step in range(1, config.n_steps + 1):
        if alive.size == 0:
            break
        new = step_particle(pos[alive], config.dt, topology.D, rng)
        gap = np.linalg.norm(new[:, None, :] - centers[None], axis=2) - r
        absorbed = gap <= 0
        if config.crossing_correction:
            # planar bridge approximation of an excursion into the sphere
            p_cross = np.exp(-2.0 * np.clip(prev_gap[alive], 0, None) * np.clip(gap, 0, None) / sigma2)
            absorbed |= rng.random(gap.shape) < p_cross
        hit = absorbed.any(axis=1)
        if hit.any():
            sink = np.argmin(np.where(absorbed, gap, np.inf), axis=1)
            idx = alive[hit]
            hit_step[idx] = step
            hit_sink[idx] = sink[hit] + 1
        pos[alive] = new
        prev_gap[alive] = gap
        alive = alive[~hit]

    done = np.flatnonzero(hit_step)
    recs = [HittingRecord(source, int(hit_sink[i]), int(hit_step[i]) * config.dt) for i in done]
    recs.sort(key=lambda rec: (rec.sink, rec.hit_time))
    return recs


def _emission_job(args):
    topology, source, config, replication = args
    return simulate_emission(topology, source, config, replication=replication)


def simulate_replications(topology: Topology, config: SimConfig, sources=(1, 2),
                          jobs: int = 1, progress=None) -> list[HittingRecord]:
    """All replications for the given sources, canonically ordered by (source, sink, hit_time)."""
    if topology.single_sphere:
        sources = tuple(s for s in sources if s == 1)
    tasks = [(topology, s, config, k) for k in range(config.replications) for s in sources]
    records = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for i, recs in enumerate(ex.map(_emission_job, tasks, chunksize=4), 1):
                records.extend(recs)
                if progress: progress(i, len(tasks))
    else:
        for i, task in enumerate(tasks, 1):
            records.extend(_emission_job(task))
            if progress: progress(i, len(tasks))
    records.sort()
    return records
