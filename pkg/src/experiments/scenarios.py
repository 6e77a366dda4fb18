from itertools import product
import numpy as np
from ..particles.topology import Topology

# entropy tags keeping the random streams of each stage apart
STAGE_CHANNEL, STAGE_BER, STAGE_GENIE, STAGE_FIXED, STAGE_GGD, STAGE_PROTOCOL = range(1, 7)


def rng_for(seed, stage, *keys) -> np.random.Generator:
    ints = [int(seed), int(stage), *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(ints)))


def topology_grid(sweep, D=50.0):
    """Every (d, r_r, h) combination of the sweep section."""
    for d, r_r, h in product(sweep.d_values, sweep.r_r_values, sweep.h_values):
        yield Topology(d=float(d), h=float(h), r_r=float(r_r), D=D)


def ber_points(link):
    """(point index, Q1, t_s) in canonical order."""
    return [(i, int(q), float(t)) for i, (t, q) in enumerate(product(link.ts_values, link.q1_values))]
