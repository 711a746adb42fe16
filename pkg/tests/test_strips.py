import math
import random

import pytest

from visperim import (
    DomainError,
    Instance,
    InputError,
    bucketize,
    classify_bad_squares,
    evaluate,
    jitter,
    plan_buckets,
    squeeze,
    squeeze_with_plan,
    uniform_instance,
    zigzag,
)
from visperim.strips import bucket_index
from conftest import make_random_instance


def uniform_tall(k: int, n: int, width: float = 2.0) -> Instance:
    ys = tuple(0.5 + i / k for i in range(n))
    return Instance(width, ys[-1] + 0.5, ys)


class TestBucketize:
    def test_ties_round_up(self):
        inst = Instance(2.0, 3.0, (0.5, 1.0, 1.5, 2.5))
        plan = bucketize(inst)
        assert [b.members for b in plan.buckets] == [(0, 1), (2,), (3,)]

    def test_bucket_index_rule(self):
        assert bucket_index(0.5) == 1
        assert bucket_index(1.49) == 1
        assert bucket_index(1.5) == 2
        assert bucket_index(2.5) == 3

    def test_single_bucket(self):
        inst = Instance(2.0, 2.0, (0.6, 0.9, 1.2))
        plan = bucketize(inst)
        nonempty = plan.nonempty()
        assert len(nonempty) == 1 and nonempty[0].members == (0, 1, 2)

    def test_empty_buckets_recorded(self):
        inst = Instance(2.0, 4.0, (0.5, 3.5))
        plan = bucketize(inst)
        assert len(plan.buckets) == 4
        assert [len(b.members) for b in plan.buckets] == [1, 0, 0, 1]

    def test_uniform_spacing_fills_buckets_evenly(self):
        k = 4
        inst = uniform_tall(k, 3 * k)
        plan = bucketize(inst)
        sizes = [len(b.members) for b in plan.nonempty()]
        assert sizes == [k, k, k]

    def test_members_partition_squares(self, rng):
        for _ in range(20):
            inst = make_random_instance(rng, n=rng.randint(1, 30),
                                        height=rng.uniform(1.5, 10.0))
            plan = bucketize(inst)
            seen = [j for b in plan.buckets for j in b.members]
            assert sorted(seen) == list(range(inst.n))
            for b in plan.buckets:
                for j in b.members:
                    assert b.index - 0.5 <= inst.ys[j] <= b.index + 0.5


class TestPlanBuckets:
    def test_delta_min_is_least_bucket_gap(self, rng):
        for _ in range(10):
            inst = make_random_instance(rng, n=rng.randint(2, 40),
                                        height=rng.uniform(2.0, 8.0), min_dy=1e-3)
            plan = plan_buckets(inst)
            gaps = [b.gap for b in plan.nonempty()]
            assert plan.delta_min == min(gaps)
            assert all(g is not None and g > 0 for g in gaps)

    def test_singletons_count_as_gap_two(self):
        inst = Instance(2.0, 4.0, (0.5, 3.5))
        plan = plan_buckets(inst)
        assert plan.delta_min == 2.0


class TestSqueeze:
    def test_guarantee_on_random_tall_strips(self, rng):
        for _ in range(25):
            n = rng.randint(2, 120)
            h = rng.uniform(2.0, 20.0)
            inst = make_random_instance(rng, n=n, width=2.0, height=h, min_dy=1e-4)
            layout, plan = squeeze_with_plan(inst, delta_stair=1e-6)
            d = plan.delta_min
            bound = d * (1.0 - d) / 2.0 - 1e-6
            assert evaluate(inst, layout).min_gap >= bound - 1e-12

    def test_scaled_guarantee_for_narrow_strips(self, rng):
        # For w < 2 the halves shrink proportionally, so the layout bound
        # scales by ((w-1) - d) / (w - 1) instead of (1 - d).
        for _ in range(15):
            w = rng.choice([1.5, 1.8])
            inst = make_random_instance(rng, n=rng.randint(4, 80), width=w,
                                        height=rng.uniform(3.0, 12.0), min_dy=1e-4)
            layout, plan = squeeze_with_plan(inst, delta_stair=1e-6)
            d = plan.delta_min
            if d >= w - 1.0:
                continue
            bound = d * ((w - 1.0) - d) / (2.0 * (w - 1.0)) - 1e-6
            assert evaluate(inst, layout).min_gap >= bound - 1e-12

    def test_halves_keep_separation(self):
        # Two buckets of two squares each, w = 2: even bucket stays left
        # of 1 - d/2, odd bucket right of 1 + d/2, with the separation
        # target d capped at the horizontal budget.
        inst = Instance(2.0, 3.0, (0.6, 0.9, 1.6, 1.9))
        with pytest.warns(UserWarning, match="capping the separation"):
            layout, plan = squeeze_with_plan(inst)
        d = min(plan.delta_min, inst.budget - 1e-9)
        evens = [layout.xs[j] for b in plan.nonempty() if b.index % 2 == 0 for j in b.members]
        odds = [layout.xs[j] for b in plan.nonempty() if b.index % 2 == 1 for j in b.members]
        assert all(x <= 1.0 - d / 2 + 1e-9 for x in evens)
        assert all(x >= 1.0 + d / 2 - 1e-9 for x in odds)

    def test_halves_keep_separation_dense(self):
        # Crowded buckets keep the real minimum bucket gap as separation.
        ys = tuple(0.5 + 0.12 * i for i in range(8)) + tuple(
            1.6 + 0.12 * i for i in range(8)
        )
        inst = Instance(2.0, 3.0, ys)
        layout, plan = squeeze_with_plan(inst)
        d = plan.delta_min
        assert d < inst.budget
        evens = [layout.xs[j] for b in plan.nonempty() if b.index % 2 == 0 for j in b.members]
        odds = [layout.xs[j] for b in plan.nonempty() if b.index % 2 == 1 for j in b.members]
        assert all(x <= 1.0 - d / 2 + 1e-9 for x in evens)
        assert all(x >= 1.0 + d / 2 - 1e-9 for x in odds)

    def test_zorder_follows_y_order(self, rng):
        inst = make_random_instance(rng, n=20, height=6.0, min_dy=1e-3)
        layout = squeeze(inst)
        assert layout.zorder == tuple(range(20))

    def test_singleton_buckets_alternate_walls(self):
        inst = Instance(2.0, 4.0, (0.6, 1.5, 2.5, 3.4))
        layout = squeeze(inst)
        # bucket numbers 1..4; odd buckets anchor right, even anchor left
        assert layout.xs == (1.5, 0.5, 1.5, 0.5)

    def test_overlarge_bucket_gap_warns_and_falls_back(self):
        inst = Instance(1.5, 4.0, (0.5, 3.5))
        with pytest.warns(UserWarning, match="scale 1/4"):
            layout = squeeze(inst)
        assert evaluate(inst, layout).min_gap > 0

    def test_rejects_duplicates(self):
        inst = Instance(2.0, 3.0, (0.7, 0.7, 2.0))
        with pytest.raises(InputError):
            squeeze(inst)


class TestZigzag:
    def test_cycles_through_spread_positions(self):
        inst = uniform_tall(3, 7)
        layout = zigzag(inst)
        assert layout.xs == pytest.approx(
            (0.5, 0.7, 0.9, 1.5, 1.3, 1.1, 0.5), abs=1e-12
        )
        assert layout.zorder == tuple(range(7))

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_gap_formula_for_integer_spacing(self, k):
        inst = uniform_tall(k, 4 * k)
        got = evaluate(inst, zigzag(inst)).min_gap
        assert got == pytest.approx(1.0 / k + 1.0 / (2 * k - 1), abs=1e-9)

    def test_narrow_strip_scales_x_term(self):
        k, w = 3, 1.5
        inst = uniform_tall(k, 4 * k, width=w)
        got = evaluate(inst, zigzag(inst)).min_gap
        assert got == pytest.approx(1.0 / k + (w - 1.0) / (2 * k - 1), abs=1e-9)

    def test_short_input_is_single_run(self):
        inst = uniform_tall(5, 4)
        layout = zigzag(inst)
        assert all(b > a for a, b in zip(layout.xs, layout.xs[1:]))

    def test_non_uniform_rejected_with_index(self):
        inst = Instance(2.0, 3.0, (0.5, 1.0, 1.6, 2.1))
        with pytest.raises(DomainError, match="gap 1"):
            zigzag(inst)

    def test_wide_spacing_rejected(self):
        inst = Instance(2.0, 3.0, (0.5, 1.3, 2.1))
        with pytest.raises(DomainError, match="k >= 2"):
            zigzag(inst)

    def test_fractional_k_uses_floor_bundles(self):
        # spacing 1/2.5: bundles of 2, positions spread over 2*2 slots
        ys = tuple(0.5 + i / 2.5 for i in range(6))
        inst = Instance(2.0, ys[-1] + 0.5, ys)
        layout = zigzag(inst)
        assert len(set(layout.xs)) == 4
        assert evaluate(inst, layout).min_gap > 0


class TestJitter:
    def test_deterministic_per_seed(self):
        inst = uniform_instance(12, 2.0, 2.0)
        assert jitter(inst, 7) == jitter(inst, 7)
        assert jitter(inst, 7) != jitter(inst, 8)

    def test_bounds_and_order(self, rng):
        inst = make_random_instance(rng, n=50, height=5.0)
        layout = jitter(inst, 3)
        assert all(0.5 <= x <= inst.width - 0.5 for x in layout.xs)
        assert layout.zorder == tuple(range(50))

    def test_single_square_gap_two(self):
        inst = Instance(2.0, 2.0, (1.0,))
        rep = evaluate(inst, jitter(inst, 123))
        assert rep.min_gap == 2.0
