import numpy as np
import pandas as pd
import pytest

from src.analysis.metrics import ber_ci, group_ber, sir, throughput
from src.channel.model import REFERENCE_CROSS_PARAMS, REFERENCE_PAIR_PARAMS
from src.utils.errors import DomainError


class TestSir:
    def test_reference_values(self, topology):
        assert sir(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, 0.08) == pytest.approx(0.70215, rel=1e-4)
        assert sir(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, 1e12) == pytest.approx(5.96918, rel=1e-4)

    def test_increases_with_symbol_duration(self, topology):
        t = np.linspace(0.05, 1.0, 20)
        values = sir(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, t)
        assert np.all(np.diff(values) > 0)

    def test_rejects_nonpositive_duration(self, topology):
        with pytest.raises(DomainError):
            sir(REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS, topology, 0.0)


class TestThroughput:
    def test_formula(self):
        assert throughput(1, 2, 0.08, 0.0) == pytest.approx(25.0)
        assert throughput(1, 1, 0.08, 0.5) == pytest.approx(6.25)

    def test_ber_range(self):
        with pytest.raises(DomainError):
            throughput(1, 2, 0.08, 1.5)


class TestBerCi:
    def test_interval_brackets_mean(self):
        mean, lo, hi = ber_ci([10, 12, 8, 11], [1000] * 4)
        assert mean == pytest.approx(0.01025)
        assert lo < mean < hi
        assert mean - lo == pytest.approx(hi - mean)

    def test_single_replication(self):
        assert ber_ci([5], [100]) == (0.05, 0.05, 0.05)

    def test_interval_clipped_at_zero(self):
        _, lo, _ = ber_ci([0, 0, 3], [100] * 3)
        assert lo == 0.0

    def test_grouping(self):
        raw = pd.DataFrame({
            "detector": ["zf_in"] * 3 + ["zf_ex"] * 3, "Q1": 500, "t_s": 0.08,
            "replication": [0, 1, 2] * 2, "errors": [1, 2, 3, 4, 5, 6], "n_bits": 100,
            "lower_triggers": [0, 1, 0, 0, 0, 0], "runtime_s": 0.5,
        })
        grouped = group_ber(raw)
        assert list(grouped["detector"]) == ["zf_ex", "zf_in"]
        row = grouped.set_index("detector").loc["zf_in"]
        assert row["ber"] == pytest.approx(0.02)
        assert row["n"] == 3
        assert row["lower_triggers"] == 1
        assert row["runtime_s"] == pytest.approx(1.5)

    def test_grouping_keeps_singular_slots(self):
        raw = pd.DataFrame({
            "detector": "genie", "Q1": 300, "t_s": 0.08, "replication": [0, 1],
            "errors": [3, 5], "n_bits": 1000, "lower_triggers": 0,
            "singular_slots": [2, 4], "runtime_s": 0.1,
        })
        row = group_ber(raw).iloc[0]
        assert row["singular_slots"] == 6
        assert row["singular_rate"] == pytest.approx(0.006)
