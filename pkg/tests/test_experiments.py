import math

import pytest

from rflcs.errors import CapacityError
from rflcs.experiments import (
    CSV_HEADER,
    SweepConfig,
    run_fixed_k_saturation,
    run_regime_sweep,
    run_tailbound_suite,
    uniformity_test_exhaustive,
)
from rflcs.rng import RngStream


class TestSweep:
    def config(self, **kw):
        base = dict(
            regime=2,
            k_list=(4, 6),
            trials=8,
            master_seed=5,
            rho=1.0,
            estimator="exact",
        )
        base.update(kw)
        return SweepConfig(**base)

    def test_rejects_exact_estimator_beyond_cap(self):
        with pytest.raises(ValueError):
            self.config(k_list=(4, 25))

    def test_csv_shape(self):
        report = run_regime_sweep(self.config())
        csv = report.to_csv()
        lines = csv.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        assert csv.endswith("\n")

    def test_exact_estimator_lower_equals_upper(self):
        report = run_regime_sweep(self.config())
        for row in report.rows:
            assert row.lower == row.upper == row.mean_R

    def test_bracket_orders_estimates(self):
        report = run_regime_sweep(self.config(estimator="bracket", k_list=(6,)))
        row = report.rows[0]
        assert row.lower <= row.upper
        assert row.mean_R == row.lower

    def test_worker_independence(self):
        cfg = self.config(trials=6)
        a = run_regime_sweep(cfg, workers=1).to_csv()
        b = run_regime_sweep(cfg, workers=3).to_csv()
        assert a == b

    def test_seed_sensitivity(self):
        a = run_regime_sweep(self.config(master_seed=5)).to_csv()
        b = run_regime_sweep(self.config(master_seed=6)).to_csv()
        assert a != b

    def test_n_override(self):
        # n=10 deliberately exceeds the regime-1 small-n guidance for k=9
        with pytest.warns(UserWarning):
            report = run_regime_sweep(
                self.config(regime=1, k_list=(9,), n_override=10, rho=0.0)
            )
        assert report.rows[0].n == 10


class TestSaturation:
    def test_small_run(self):
        stats = run_fixed_k_saturation(3, 60, 20, RngStream(50))
        assert stats.trials == 20
        assert 0.0 <= stats.mean <= 3.0
        assert stats.stderr >= 0.0

    def test_determinism(self):
        a = run_fixed_k_saturation(3, 40, 10, RngStream(51))
        b = run_fixed_k_saturation(3, 40, 10, RngStream(51))
        assert a == b

    def test_capacity(self):
        with pytest.raises(CapacityError):
            run_fixed_k_saturation(30, 10, 2, RngStream(52))


class TestUniformity:
    def test_trivial_n1(self):
        report = uniformity_test_exhaustive(1, 2)
        assert report.uniform
        assert report.total_pairs == 4
        # matched pairs (0,0) and (1,1) give length 1; the others length 0
        assert report.size_counts == {0: 2, 1: 2}

    def test_n2_k2_counts(self):
        report = uniformity_test_exhaustive(2, 2)
        assert report.uniform
        assert sum(report.size_counts.values()) == 16
        for bucket in report.subset_counts.values():
            assert len(set(bucket.values())) == 1

    def test_capacity(self):
        with pytest.raises(CapacityError):
            uniformity_test_exhaustive(6, 5)


class TestTailboundSuite:
    def test_reference_seed_small_budget(self):
        report = run_tailbound_suite(RngStream(42), trials=20_000, solver_trials=10)
        assert len(report.items) == 6
        names = [item.name for item in report.items]
        assert names[0].startswith("bernstein")
        assert any(n.startswith("coupon") for n in names)
        assert any(n.startswith("occupancy") for n in names)
        assert any(n.startswith("regime1") for n in names)
        for item in report.items:
            assert 0.0 <= item.observed <= 1.0
            assert item.bound >= 0.0

    def test_determinism(self):
        a = run_tailbound_suite(RngStream(7), trials=5_000, solver_trials=3)
        b = run_tailbound_suite(RngStream(7), trials=5_000, solver_trials=3)
        assert a == b


def test_regime2_row_consistent_with_target():
    cfg = SweepConfig(
        regime=2, k_list=(8,), trials=12, master_seed=9, rho=2.0, estimator="exact"
    )
    row = run_regime_sweep(cfg).rows[0]
    assert row.n == math.ceil(2.0 * 8 * math.sqrt(8) / 2)
    assert math.isclose(row.theory_target, 8 * (1 - math.exp(-2.0)))
    assert row.mean_R <= 8.0
