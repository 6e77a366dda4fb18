import pytest

from src.channel.model import REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, slot_probs
from src.particles.topology import Topology


@pytest.fixture
def topology():
    return Topology()


@pytest.fixture
def probs(topology):
    # d=2, r_r=4, h=2, D=50 at t_s = 0.08 with four ISI slots
    return slot_probs(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, 0.08, 4)
