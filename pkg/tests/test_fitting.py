import numpy as np
import pytest

from src.channel.fitting import fit_model
from src.channel.model import REFERENCE_CROSS_PARAMS, REFERENCE_PAIR_PARAMS, model_values
from src.experiments.channel import fit_channel, run_channel_simulation
from src.experiments.config import ExperimentConfig
from src.particles.cdf import EmpiricalCdf
from src.particles.topology import SimConfig
from src.utils.errors import DomainError, FitError

GRID = SimConfig().time_grid()


def synthetic(params, topology, d_ij, grid=GRID):
    return EmpiricalCdf(grid, model_values(grid, params.as_tuple(), topology, d_ij), 1)


class TestFitModel:
    @pytest.mark.parametrize("params", [REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS])
    def test_recovers_noise_free_coefficients(self, params, topology):
        d_ij = params.distance
        res = fit_model(synthetic(params, topology, d_ij), topology, d_ij, params.link_class)
        assert res.converged
        np.testing.assert_allclose(res.params.as_tuple(), params.as_tuple(), atol=1e-6)
        assert res.rms < 1e-8
        assert res.in_range

    def test_subsampled_grid_gives_same_fit(self, topology):
        full = fit_model(synthetic(REFERENCE_PAIR_PARAMS, topology, topology.d), topology, topology.d)
        half = fit_model(synthetic(REFERENCE_PAIR_PARAMS, topology, topology.d, GRID[::2]), topology, topology.d)
        np.testing.assert_allclose(full.params.as_tuple(), half.params.as_tuple(), atol=1e-6)

    def test_zero_cdf(self, topology):
        with pytest.raises(FitError):
            fit_model(EmpiricalCdf(GRID, np.zeros_like(GRID), 10), topology, topology.d)

    def test_short_grid(self, topology):
        grid = GRID[:20]
        with pytest.raises(DomainError):
            fit_model(EmpiricalCdf(grid, np.full(20, 0.1), 10), topology, topology.d)

    def test_report_row(self, topology):
        res = fit_model(synthetic(REFERENCE_PAIR_PARAMS, topology, topology.d), topology, topology.d)
        row = res.as_row()
        assert row["link_class"] == "pair"
        assert set(row) >= {"b1", "b2", "b3", "rms", "converged", "in_range"}


@pytest.mark.slow
def test_simulated_channel_fits_close_to_reference():
    cfg = ExperimentConfig(sim=SimConfig(molecules_per_emission=5000, replications=50), jobs=4)
    run = run_channel_simulation(cfg)
    fp, fc = fit_channel(run.pair, run.cross, cfg.topology)
    assert fp.converged and fc.converged
    assert fp.rms < 5e-3 and fc.rms < 5e-3
    np.testing.assert_allclose(fp.params.as_tuple(), REFERENCE_PAIR_PARAMS.as_tuple(), atol=0.05)
    np.testing.assert_allclose(fc.params.as_tuple(), REFERENCE_CROSS_PARAMS.as_tuple(), atol=0.05)
