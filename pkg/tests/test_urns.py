import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rflcs.bounds import lambda_empty
from rflcs.errors import CapacityError
from rflcs.rng import RngStream
from rflcs.urns import (
    GroupedUrnSpec,
    classical_urn_empty_counts,
    classical_urn_exact,
    classical_urn_sample,
    dominance_check,
    grouped_urn_empty_counts,
    grouped_urn_exact,
    grouped_urn_sample,
    survival_from_pmf,
    survival_from_samples,
)


class TestSpecs:
    def test_totals(self):
        spec = GroupedUrnSpec(k=6, s_vec=(2, 2, 3))
        assert spec.s == 7 and spec.b == 3

    def test_rejects_oversized_group(self):
        with pytest.raises(ValueError):
            GroupedUrnSpec(k=3, s_vec=(4,))
        with pytest.raises(ValueError):
            GroupedUrnSpec(k=0, s_vec=())


class TestExactDistributions:
    def test_classical_degenerate(self):
        assert classical_urn_exact(3, 0) == [0.0, 0.0, 0.0, 1.0]

    def test_classical_one_ball(self):
        probs = classical_urn_exact(4, 1)
        assert probs == [0.0, 0.0, 0.0, 1.0, 0.0]

    def test_classical_two_urns_two_balls(self):
        # Y=1 iff both balls land in the same urn
        probs = classical_urn_exact(2, 2)
        assert probs == [0.5, 0.5, 0.0]

    def test_classical_sums_to_one_and_matches_mean(self):
        for k, s in [(5, 3), (10, 10), (20, 100), (7, 0)]:
            probs = classical_urn_exact(k, s)
            assert math.isclose(sum(probs), 1.0, abs_tol=1e-12)
            mean = sum(m * p for m, p in enumerate(probs))
            assert math.isclose(mean, lambda_empty(k, s), abs_tol=1e-9)

    def test_classical_capacity(self):
        with pytest.raises(CapacityError):
            classical_urn_exact(31, 5)
        with pytest.raises(CapacityError):
            classical_urn_exact(5, 201)

    def test_grouped_single_full_group(self):
        probs = grouped_urn_exact(GroupedUrnSpec(k=4, s_vec=(4,)))
        assert probs == [1.0, 0.0, 0.0, 0.0, 0.0]

    def test_grouped_two_singletons(self):
        # both balls hit the same urn with prob 1/3, leaving 2 urns empty
        probs = grouped_urn_exact(GroupedUrnSpec(k=3, s_vec=(1, 1)))
        assert np.allclose(probs, [0.0, 2 / 3, 1 / 3, 0.0])

    def test_grouped_singleton_groups_match_classical(self):
        # all-singleton groups are exactly the classical model
        k, b = 5, 4
        grouped = grouped_urn_exact(GroupedUrnSpec(k=k, s_vec=(1,) * b))
        classical = classical_urn_exact(k, b)
        assert np.allclose(grouped, classical, atol=1e-12)

    def test_grouped_capacity(self):
        with pytest.raises(CapacityError):
            grouped_urn_exact(GroupedUrnSpec(k=30, s_vec=(15, 15)))

    @given(
        st.integers(2, 6).flatmap(
            lambda k: st.tuples(
                st.just(k),
                st.lists(st.integers(0, k), min_size=1, max_size=3),
            )
        )
    )
    @settings(max_examples=40, deadline=None)
    def test_grouped_pmf_properties(self, args):
        k, s_vec = args
        probs = grouped_urn_exact(GroupedUrnSpec(k=k, s_vec=tuple(s_vec)))
        assert math.isclose(sum(probs), 1.0, abs_tol=1e-12)
        assert all(p >= 0 for p in probs)
        max_hit = min(k, sum(s_vec))
        # at least k - sum(s_i) urns stay empty
        assert all(p == 0 for p in probs[: k - max_hit])


class TestSampling:
    def test_classical_sample_range(self):
        s = classical_urn_sample(5, 3, RngStream(40))
        assert s.model == "classical" and 2 <= s.empty_count <= 4

    def test_grouped_sample_range(self):
        spec = GroupedUrnSpec(k=6, s_vec=(2, 3))
        s = grouped_urn_sample(spec, RngStream(41))
        assert s.model == "grouped" and 1 <= s.empty_count <= 4

    def test_batch_matches_exact_mean(self):
        k, s, trials = 10, 10, 50_000
        ys = classical_urn_empty_counts(k, s, trials, RngStream(42))
        lam = lambda_empty(k, s)
        se = float(ys.std(ddof=1)) / math.sqrt(trials)
        assert abs(float(ys.mean()) - lam) <= 4 * se

    def test_batch_determinism(self):
        a = classical_urn_empty_counts(8, 12, 100, RngStream(43))
        b = classical_urn_empty_counts(8, 12, 100, RngStream(43))
        assert (a == b).all()

    def test_grouped_batch_matches_exact_pmf(self):
        spec = GroupedUrnSpec(k=6, s_vec=(2, 2, 3))
        trials = 50_000
        xs = grouped_urn_empty_counts(spec, trials, RngStream(44))
        emp = np.bincount(xs, minlength=spec.k + 1) / trials
        exact = np.array(grouped_urn_exact(spec))
        se = np.sqrt(exact * (1 - exact) / trials)
        assert (np.abs(emp - exact) <= 4 * se + 1e-9).all()

    def test_zero_balls(self):
        ys = classical_urn_empty_counts(7, 0, 10, RngStream(45))
        assert (ys == 7).all()


class TestSurvival:
    def test_from_pmf(self):
        surv = survival_from_pmf([0.2, 0.5, 0.3])
        assert np.allclose(surv, [1.0, 0.8, 0.3])

    def test_from_samples(self):
        surv = survival_from_samples(np.array([0, 1, 1, 2]), 2)
        assert np.allclose(surv, [1.0, 0.75, 0.25])


class TestDominance:
    def test_exact_route_no_violation(self):
        spec = GroupedUrnSpec(k=6, s_vec=(2, 2, 3))
        rep = dominance_check(spec, trials=10, rng=RngStream(46))
        assert rep.exact and not rep.violation
        assert rep.margin <= 0.0
        assert rep.threshold == 0.0

    def test_mc_route_no_violation(self):
        spec = GroupedUrnSpec(k=50, s_vec=(10,) * 5)
        rep = dominance_check(spec, trials=20_000, rng=RngStream(47))
        assert not rep.exact and not rep.violation
        assert rep.trials == 20_000

    @given(
        st.integers(2, 6).flatmap(
            lambda k: st.tuples(
                st.just(k),
                st.lists(st.integers(0, k), min_size=1, max_size=3),
            )
        )
    )
    @settings(max_examples=30, deadline=None)
    def test_property_exact_dominance(self, args):
        # grouped placements collide less, so the grouped empty count is
        # stochastically below the classical one at equal ball totals
        k, s_vec = args
        spec = GroupedUrnSpec(k=k, s_vec=tuple(s_vec))
        sx = survival_from_pmf(grouped_urn_exact(spec))
        sy = survival_from_pmf(classical_urn_exact(k, spec.s))
        assert (sx <= sy + 1e-12).all()
