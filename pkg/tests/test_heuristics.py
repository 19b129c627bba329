import math
import random

import pytest

from smoothopt.heuristics import (
    KMeansInstance,
    KnapsackInstance,
    MwisInstance,
    kmeans_cost,
    kmeans_greedy,
    kmeans_payoff,
    kmeans_payoff_curve,
    kmeans_x_to_rho,
    knapsack_greedy,
    knapsack_payoff,
    knapsack_payoff_curve,
    mwis_greedy,
    mwis_payoff,
    mwis_payoff_curve,
    payoff_curve,
    random_kmeans,
    random_knapsack,
    random_mwis,
)

TWO_ITEMS = KnapsackInstance(values=(3.0, 4.0), sizes=(1.0, 3.0), capacity=3.0)
TRIANGLE = MwisInstance(weights=(3.0, 2.0, 1.0), edges=((0, 1), (1, 2), (0, 2)))
STAR = MwisInstance(weights=(10.0, 1.0, 1.0, 1.0), edges=((0, 1), (0, 2), (0, 3)))


class TestInstances:
    def test_knapsack_validation(self):
        with pytest.raises(ValueError):
            KnapsackInstance(values=(1.0, -1.0), sizes=(1.0, 1.0), capacity=1.0)
        with pytest.raises(ValueError):
            KnapsackInstance(values=(1.0,), sizes=(1.0, 1.0), capacity=1.0)

    def test_mwis_validation(self):
        with pytest.raises(ValueError):
            MwisInstance(weights=(1.0,), edges=((0, 0),))
        with pytest.raises(ValueError):
            MwisInstance(weights=(1.0, 1.0), edges=((0, 5),))

    def test_kmeans_validation(self):
        with pytest.raises(ValueError):
            KMeansInstance(points=((0.0, 0.0), (0.0, 0.0)), weights=(1.0, 1.0), k=1)
        with pytest.raises(ValueError):
            KMeansInstance(points=((0.0, 0.0),), weights=(1.0,), k=2)

    def test_text_round_trips(self):
        import numpy as np

        rng = random.Random(0)
        kn = random_knapsack(6, rng)
        kn2 = KnapsackInstance.from_text(kn.to_text())
        assert np.array_equal(kn2.values, kn.values)
        assert np.array_equal(kn2.sizes, kn.sizes)
        assert kn2.capacity == kn.capacity
        mw = random_mwis(6, 0.4, rng)
        mw2 = MwisInstance.from_text(mw.to_text())
        assert np.array_equal(mw2.weights, mw.weights)
        assert mw2.edges == mw.edges
        km = random_kmeans(6, 2, rng)
        km2 = KMeansInstance.from_text(km.to_text())
        assert np.array_equal(km2.points, km.points)
        assert np.array_equal(km2.weights, km.weights)
        assert km2.k == km.k


class TestKnapsackGreedy:
    def test_rho_zero_by_value(self):
        chosen, total = knapsack_greedy(TWO_ITEMS, 0.0)
        assert chosen == [1] and total == 4.0

    def test_rho_one_by_density(self):
        chosen, total = knapsack_greedy(TWO_ITEMS, 1.0)
        # density order 3/1 > 4/3; item 0 first, then item 1 does not fit
        assert chosen == [0] and total == 3.0

    def test_everything_fits(self):
        inst = KnapsackInstance(values=(1.0, 2.0, 3.0), sizes=(1.0, 1.0, 1.0), capacity=10.0)
        for rho in (0.0, 0.3, 1.0):
            _, total = knapsack_greedy(inst, rho)
            assert total == 6.0

    def test_feasibility(self):
        rng = random.Random(1)
        for _ in range(50):
            inst = random_knapsack(8, rng)
            chosen, _ = knapsack_greedy(inst, rng.random())
            assert sum(inst.sizes[i] for i in chosen) <= inst.capacity + 1e-12


class TestMwisGreedy:
    def test_edgeless_takes_all(self):
        inst = MwisInstance(weights=(1.0, 2.0, 3.0), edges=())
        chosen, total = mwis_greedy(inst, 0.7)
        assert sorted(chosen) == [0, 1, 2] and total == 6.0

    def test_triangle_picks_heaviest(self):
        chosen, total = mwis_greedy(TRIANGLE, 0.0)
        assert chosen == [0] and total == 3.0

    def test_star_center_wins(self):
        chosen, total = mwis_greedy(STAR, 1.0)
        assert chosen == [0] and total == 10.0

    def test_independence(self):
        rng = random.Random(2)
        for _ in range(50):
            inst = random_mwis(10, 0.4, rng)
            chosen, _ = mwis_greedy(inst, rng.random())
            es = set(inst.edges)
            for a in chosen:
                for b in chosen:
                    assert (a, b) not in es and (b, a) not in es


class TestKMeansGreedy:
    def test_k_equals_n_zero_cost(self):
        rng = random.Random(3)
        inst = random_kmeans(5, 5, rng)
        S, cost = kmeans_greedy(inst, 0.5)
        assert len(S) == 5 and cost == 0.0

    def test_k1_matches_brute_force_cost(self):
        rng = random.Random(4)
        inst = random_kmeans(7, 1, rng)
        S, cost = kmeans_greedy(inst, 0.5)
        # the chosen center is the max-weight point; its cost must match a
        # direct recomputation
        assert math.isclose(cost, kmeans_cost(inst, S), rel_tol=1e-12)

    def test_cardinality(self):
        rng = random.Random(5)
        for _ in range(20):
            inst = random_kmeans(8, 3, rng)
            S, _ = kmeans_greedy(inst, 0.2 + 0.7 * rng.random())
            assert len(S) == 3 and len(set(S)) == 3

    def test_rho_domain(self):
        rng = random.Random(6)
        inst = random_kmeans(5, 2, rng)
        with pytest.raises(ValueError):
            kmeans_greedy(inst, 0.0)


class TestPayoffNormalization:
    def test_knapsack_all_fit_is_one(self):
        inst = KnapsackInstance(values=(1.0, 2.0), sizes=(0.1, 0.1), capacity=1.0)
        assert knapsack_payoff(inst, 0.5) == 1.0

    def test_kmeans_k_equals_n_is_one(self):
        inst = random_kmeans(4, 4, random.Random(7))
        assert kmeans_payoff(inst, 0.5) == 1.0

    def test_values_in_unit_interval(self):
        rng = random.Random(8)
        for _ in range(30):
            assert 0.0 <= knapsack_payoff(random_knapsack(6, rng), rng.random()) <= 1.0
            assert 0.0 <= mwis_payoff(random_mwis(6, 0.3, rng), rng.random()) <= 1.0
            assert 0.0 <= kmeans_payoff(random_kmeans(6, 2, rng), 0.1 + 0.8 * rng.random()) <= 1.0


class TestPayoffCurves:
    def test_knapsack_reference_breakpoint(self):
        curve = knapsack_payoff_curve(TWO_ITEMS, normalize=False)
        want = math.log(4.0 / 3.0) / math.log(3.0)
        assert curve.num_pieces == 2
        assert math.isclose(curve.breakpoints[1], want, rel_tol=1e-12)
        assert math.isclose(want, 0.26186, abs_tol=5e-6)
        assert curve.values == (4.0, 3.0)

    def test_dominating_order_single_piece(self):
        inst = KnapsackInstance(values=(5.0, 1.0), sizes=(1.0, 2.0), capacity=1.0)
        assert knapsack_payoff_curve(inst).num_pieces == 1

    def test_star_curve_constant(self):
        curve = mwis_payoff_curve(STAR)
        assert curve.num_pieces == 1
        assert curve.values[0] == 10.0 / 13.0

    def test_knapsack_matches_simulation(self):
        rng = random.Random(9)
        for _ in range(20):
            inst = random_knapsack(8, rng)
            curve = knapsack_payoff_curve(inst)
            for i in range(200):
                rho = i / 200.0
                assert curve.evaluate(rho) == knapsack_payoff(inst, rho)

    def test_mwis_matches_simulation(self):
        rng = random.Random(10)
        for _ in range(20):
            inst = random_mwis(8, 0.35, rng)
            curve = mwis_payoff_curve(inst)
            for i in range(200):
                rho = i / 200.0
                assert curve.evaluate(rho) == mwis_payoff(inst, rho)

    def test_kmeans_matches_simulation(self):
        rng = random.Random(11)
        for _ in range(10):
            inst = random_kmeans(7, 3, rng)
            curve = kmeans_payoff_curve(inst)
            for i in range(200):
                x = i / 200.0
                assert curve.evaluate(x) == kmeans_payoff(inst, kmeans_x_to_rho(x))

    def test_interior_points_per_piece(self):
        rng = random.Random(12)
        inst = random_knapsack(7, rng)
        curve = knapsack_payoff_curve(inst)
        for lo, hi, v in curve.pieces():
            for frac in (0.25, 0.5, 0.75):
                assert knapsack_payoff(inst, lo + frac * (hi - lo)) == v

    def test_knapsack_piece_bound(self):
        rng = random.Random(13)
        for _ in range(30):
            n = rng.randint(2, 10)
            inst = random_knapsack(n, rng)
            assert knapsack_payoff_curve(inst).num_pieces <= 1 + n * (n - 1) // 2

    def test_scaling_invariance(self):
        rng = random.Random(14)
        inst = random_knapsack(7, rng)
        scaled = KnapsackInstance(
            values=tuple(10.0 * v for v in inst.values),
            sizes=inst.sizes,
            capacity=inst.capacity,
        )
        a = knapsack_payoff_curve(inst)
        b = knapsack_payoff_curve(scaled)
        for i in range(100):
            rho = i / 100.0
            assert math.isclose(a.evaluate(rho), b.evaluate(rho), rel_tol=1e-9)

    def test_dispatch(self):
        assert payoff_curve(TWO_ITEMS).num_pieces == 2
        assert payoff_curve(STAR).num_pieces == 1
        with pytest.raises(TypeError):
            payoff_curve("nope")
