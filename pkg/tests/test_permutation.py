import itertools
import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indepbound.constructions import family_H, i_unit, random_linear_hypergraph
from indepbound.errors import CapacityError, InputError
from indepbound.hypergraph import Hypergraph, is_independent
from indepbound.permutation import (
    StarConfig,
    asymptotic_ratio,
    asymptotic_ratio_limit,
    backward_count,
    backward_counts,
    cumulative,
    enumerate_star_distribution,
    expected_low_backward,
    internal_edge_count,
    p_at_most,
    p_zero,
    q_at_least,
    q_at_least_mpie,
    run_trials,
    second_stage,
    select_low_backward,
    star_distribution_by_permutations,
)

K3 = Hypergraph(2, 3, ((0, 1), (1, 2), (0, 2)))
K4 = Hypergraph(2, 4, tuple(itertools.combinations(range(4), 2)))
TRIPLE = Hypergraph(3, 3, ((0, 1, 2),))


class TestBackwardCount:
    def test_examples(self):
        # vertex 0 plays v; a=1, b=2
        assert backward_count(TRIPLE, (1, 2, 0), 0) == 1
        assert backward_count(TRIPLE, (1, 0, 2), 0) == 0
        star = StarConfig(2, 2).hypergraph()
        assert backward_count(star, (0, 1, 2, 3, 4), 0) == 0

    def test_counts_sum_to_edge_count(self):
        H = i_unit(3, 1)
        rng = random.Random(3)
        for _ in range(20):
            order = list(range(H.n))
            rng.shuffle(order)
            counts = backward_counts(H, order)
            assert sum(counts) == H.m
            assert counts == [backward_count(H, order, v) for v in range(H.n)]

    def test_bad_order(self):
        with pytest.raises(InputError):
            backward_counts(TRIPLE, (0, 1, 1))


class TestSelectLowBackward:
    def test_single_edge(self):
        for order in itertools.permutations(range(3)):
            assert select_low_backward(TRIPLE, order, 1) == set(range(3)) - {order[-1]}

    def test_large_threshold_keeps_everything(self):
        H = i_unit(3, 1)
        assert select_low_backward(H, range(H.n), 3) == set(range(H.n))

    def test_triangle(self):
        # vertex 2 has two backward edges, vertex 1 one, vertex 0 none
        assert backward_counts(K3, (0, 1, 2)) == [0, 1, 2]
        assert select_low_backward(K3, (0, 1, 2), 1) == {0}
        assert select_low_backward(K3, (0, 1, 2), 2) == {0, 1}

    def test_a1_independent_for_every_order(self):
        rng = random.Random(11)
        graphs = [K3, K4, TRIPLE, i_unit(2, 1)]
        graphs += [random_linear_hypergraph(7, 3, rng) for _ in range(3)]
        graphs += [Hypergraph(3, 6, tuple(rng.sample(list(itertools.combinations(range(6), 3)), 6)))]
        for H in graphs:
            for order in itertools.permutations(range(H.n)):
                assert is_independent(H, select_low_backward(H, order, 1))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 4))
    def test_sparsity(self, seed, A):
        rng = random.Random(seed)
        H = random_linear_hypergraph(rng.randint(3, 12), rng.choice([2, 3]), rng)
        order = list(range(H.n))
        rng.shuffle(order)
        I = select_low_backward(H, order, A)
        assert internal_edge_count(H, I) <= (A - 1) * len(I)


class TestExactProbabilities:
    def test_p_at_most_examples(self):
        assert p_at_most(2, 1, 0) == Fraction(1, 3)
        assert p_at_most(2, 1, 1) == Fraction(2, 3)
        assert p_at_most(1, 1, 1) == 1
        assert p_at_most(0, 3, 0) == 1

    def test_p_zero_examples(self):
        assert p_zero(1, 2) == Fraction(2, 3)
        assert p_zero(2, 1) == Fraction(1, 3)
        assert p_zero(0, 5) == 1
        assert p_zero(2, 2) == Fraction(8, 15)

    def test_p_zero_is_first_threshold(self):
        for d in range(1, 13):
            for t in range(1, 6):
                assert p_zero(d, t) == p_at_most(d, t, 0)

    def test_graph_case_is_caro_wei_term(self):
        for d in range(30):
            assert p_zero(d, 1) == Fraction(1, d + 1)

    def test_q_at_least(self):
        assert q_at_least(2, 1, 2) == Fraction(1, 3)
        assert q_at_least(5, 3, 0) == 1
        dist = enumerate_star_distribution(StarConfig(3, 2))
        assert q_at_least(3, 2, 1) == 1 - p_at_most(3, 2, 0) == 1 - dist[0]

    def test_q_forms_agree_on_grid(self):
        for d in range(11):
            for t in range(1, 5):
                for A in range(d + 1):
                    closed = 1 if A == 0 else 1 - p_at_most(d, t, A - 1)
                    assert q_at_least_mpie(d, t, A) == closed

    def test_monotone(self):
        for t in range(1, 5):
            for d in range(0, 12):
                row = [p_at_most(d, t, a) for a in range(d + 2)]
                assert row == sorted(row) and row[-1] == 1
            for a in range(5):
                col = [p_at_most(d, t, a) for d in range(15)]
                assert col == sorted(col, reverse=True)

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            p_at_most(-1, 1, 0)
        with pytest.raises(InputError):
            q_at_least(2, 1, 3)


class TestStarEnumeration:
    @pytest.mark.parametrize(
        "d, t, expected",
        [
            (1, 2, {0: Fraction(2, 3), 1: Fraction(1, 3)}),
            (2, 1, {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(1, 3)}),
            (1, 1, {0: Fraction(1, 2), 1: Fraction(1, 2)}),
        ],
    )
    def test_examples(self, d, t, expected):
        assert enumerate_star_distribution(StarConfig(d, t)) == expected
        assert star_distribution_by_permutations(StarConfig(d, t)) == expected

    def test_grouped_walk_equals_literal_walk(self):
        for t in range(1, 8):
            for d in range(1, 8 // t + 1):
                cfg = StarConfig(d, t)
                if cfg.size <= 8:
                    assert enumerate_star_distribution(cfg) == star_distribution_by_permutations(cfg)

    def test_formula_against_enumeration(self):
        for t in range(1, 10):
            for d in range(1, 10 // t + 1):
                dist = enumerate_star_distribution(StarConfig(d, t))
                assert sum(dist.values()) == 1
                for A in range(1, d + 2):
                    assert cumulative(dist, A - 1) == p_at_most(d, t, A - 1)

    def test_cap(self):
        with pytest.raises(CapacityError):
            enumerate_star_distribution(StarConfig(11, 1))
        with pytest.raises(CapacityError):
            enumerate_star_distribution(StarConfig(3, 2), max_td=6)

    def test_layout_is_linear_star(self):
        cfg = StarConfig(3, 2)
        assert cfg.layout == ((1, 2), (3, 4), (5, 6))
        H = cfg.hypergraph()
        assert H.degrees[0] == 3 and H.n == cfg.size


class TestAsymptotics:
    def test_equal_at_d_equals_A(self):
        for A in range(1, 6):
            for t in range(1, 5):
                assert abs(asymptotic_ratio(A, t, A) - 1) < mpmath.mpf(10) ** -30

    def test_graph_case_closed_form(self):
        # t = 1: the probability is A/(d+1), so the ratio is (A+1) d / (A (d+1))
        for d, A in [(10, 1), (100, 3), (10**4, 1), (10**4, 8)]:
            with mpmath.workdps(40):
                expected = mpmath.mpf((A + 1) * d) / (A * (d + 1))
                assert abs(asymptotic_ratio(d, 1, A) - expected) < mpmath.mpf(10) ** -30

    def test_large_d_approaches_gamma_limit(self):
        for t in range(1, 5):
            for A in (1, 4, 8):
                # the gap shrinks like 1/d
                gap = abs(asymptotic_ratio(10**4, t, A) - asymptotic_ratio_limit(t, A))
                assert gap < 5e-4

    def test_limit_tends_to_one_in_A(self):
        assert abs(asymptotic_ratio_limit(2, 10**6) - 1) < 1e-5


class TestSecondStage:
    def test_edgeless(self):
        assert second_stage(Hypergraph(3, 5), 0) == set(range(5))

    def test_single_edge(self):
        for seed in range(5):
            assert len(second_stage(TRIPLE, seed)) == 2

    def test_clique(self):
        for seed in range(5):
            assert len(second_stage(K4, seed)) == 1

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_always_independent_and_maximal(self, seed):
        rng = random.Random(seed)
        k = rng.choice([2, 3, 4])
        n = rng.randint(k, 12)
        pool = list(itertools.combinations(range(n), k))
        H = Hypergraph(k, n, tuple(rng.sample(pool, rng.randint(0, min(len(pool), 20)))))
        S = second_stage(H, seed)
        assert is_independent(H, S)
        for v in set(range(H.n)) - S:
            assert not is_independent(H, S | {v})


class TestRunTrials:
    def test_a1_sets_are_independent(self):
        batch = run_trials(i_unit(3, 1), 1, 200, seed=4)
        assert set(batch.internal_edges) == {0}
        assert batch.sizes == batch.final_sizes

    def test_deterministic(self):
        H = i_unit(3, 1)
        assert run_trials(H, 2, 50, seed=9) == run_trials(H, 2, 50, seed=9)
        assert run_trials(H, 2, 50, seed=9).sizes != run_trials(H, 2, 50, seed=10).sizes

    def test_prefix_stability(self):
        # trial i depends only on (seed, i)
        H = i_unit(3, 1)
        short = run_trials(H, 2, 20, seed=1)
        long = run_trials(H, 2, 40, seed=1)
        assert long.sizes[:20] == short.sizes

    def test_best_set_is_independent(self):
        H = family_H(1, 3, 1)
        batch = run_trials(H, 2, 30, seed=0)
        assert is_independent(H, batch.best_set)
        assert batch.best_size == max(batch.final_sizes)

    def test_expectation_on_linear_input(self):
        H = i_unit(3, 1)
        batch = run_trials(H, 1, 4000, seed=21)
        assert batch.expected_size == 9 * p_at_most(2, 2, 0)
        check = batch.expectation_check()
        assert check.within

    def test_non_linear_input_skips_expectation(self):
        H = Hypergraph(3, 4, ((0, 1, 2), (0, 1, 3)))
        batch = run_trials(H, 1, 10, seed=0)
        assert not batch.linear
        assert batch.expected_size is None and batch.expectation_check() is None

    def test_expected_low_backward(self):
        H = i_unit(3, 2)
        assert expected_low_backward(H, 1) == 81 * p_zero(4, 2)

    def test_summary_keys(self):
        summary = run_trials(TRIPLE, 1, 5, seed=0).summary()
        assert summary["best_size"] == 2
        assert summary["sparsity_ok"]

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            run_trials(TRIPLE, 0, 5, 0)
        with pytest.raises(InputError):
            run_trials(TRIPLE, 1, 0, 0)

    def test_trial_generators_are_independent_streams(self):
        from indepbound.permutation import trial_rng

        a = trial_rng(5, 0).permutation(50)
        b = trial_rng(5, 1).permutation(50)
        assert not np.array_equal(a, b)
        assert np.array_equal(a, trial_rng(5, 0).permutation(50))

    def test_uniform_permutations(self):
        # every relative order of a triple shows up about equally often
        counts = {}
        for i in range(6000):
            from indepbound.permutation import trial_rng

            order = tuple(trial_rng(123, i).permutation(3))
            counts[order] = counts.get(order, 0) + 1
        assert len(counts) == math.factorial(3)
        assert all(abs(c - 1000) < 5 * math.sqrt(1000 * 5 / 6) for c in counts.values())
