"""Closed-form query counts, recurrences, and asymptotic constants."""
import math

import numpy as np
import pytest

from oraclesearch import analytics as an
from oraclesearch.measurement import alpha_beta


class TestClassical:
    def test_frozen_values(self):
        assert an.g_classical(4) == 2.25
        assert an.g_classical(64) == 32.484375

    @pytest.mark.parametrize("N", range(2, 41))
    def test_matches_position_average(self, N):
        # hidden at position m <= N-1 costs m queries; the last position is
        # concluded for free after N-1 misses
        brute = (sum(range(1, N)) + (N - 1)) / N
        assert an.g_classical(N) == pytest.approx(brute, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.g_classical(0)


class TestTeststate:
    def test_frozen_values(self):
        assert an.g_teststate(4) == 1.0
        assert abs(an.g_teststate(5) - 1.8) < 1e-14
        assert an.g_teststate(6) == pytest.approx(1.9734013676289097, abs=1e-14)
        assert an.g_teststate(8) == pytest.approx(2.2592269060985952, abs=1e-14)

    @pytest.mark.parametrize("N", [5, 6, 9, 20, 60])
    def test_equals_mean_of_the_round_distribution(self, N):
        probs = an.termination_probs(N)
        rounds = np.arange(1, N - 2)
        assert float(rounds @ probs) == pytest.approx(an.g_teststate(N), abs=1e-10)

    def test_recurrence_step_reduces_to_classical(self):
        # alpha = beta = 1/m is a pointer with no information in it
        g = an.g_classical(4)
        for m in range(4, 200):
            g = an.recurrence_step(m, 1.0 / m, 1.0 / m, g)
            assert g == pytest.approx(an.g_classical(m + 1), abs=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.g_teststate(3)


class TestTerminationProbs:
    def test_five_candidates(self):
        assert np.allclose(an.termination_probs(5), [0.2, 0.8], atol=1e-15)

    def test_six_candidates(self):
        alpha, _ = alpha_beta(5)
        expect = [1.0 / 6.0, 5.0 / 6.0 * alpha, 5.0 / 6.0 * (1.0 - alpha)]
        assert np.allclose(an.termination_probs(6), expect, atol=1e-14)

    @pytest.mark.parametrize("N", [5, 7, 16, 100])
    def test_sums_to_one(self, N):
        assert float(an.termination_probs(N).sum()) == pytest.approx(1.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.termination_probs(4)


class TestTeststateFullspace:
    def test_frozen_value(self):
        assert an.g_teststate_fullspace(5) == pytest.approx(1.8567808060295354, abs=1e-14)

    @pytest.mark.parametrize("N", range(5, 51, 5))
    def test_matches_the_survival_sum(self, N):
        # round i is reached iff the first i-1 rounds all missed with a
        # dead pointer; the closed form condenses this series
        _, beta = alpha_beta(N - 1)
        x = (N - 1) * beta
        brute = 1.0 + sum(x ** (i - 1) * (N - i) / N for i in range(1, N - 1))
        assert an.g_teststate_fullspace(N) == pytest.approx(brute, abs=1e-10)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.g_teststate_fullspace(4)


class TestGrover:
    def test_exact_at_four(self):
        assert an.g_grover(4, 1) == 2.0
        plan = an.g_grover_opt(4)
        assert plan.k_opt == 1
        assert plan.queries == 2.0

    def test_frozen_plans(self):
        plan = an.g_grover_opt(16)
        assert plan.k_opt == 2
        assert plan.queries == pytest.approx(3.3016655013399223, abs=1e-13)
        plan = an.g_grover_opt(64)
        assert plan.k_opt == 4
        assert plan.queries == pytest.approx(6.123821026190037, abs=1e-13)

    @pytest.mark.parametrize("N", [8, 16, 64, 100])
    def test_opt_scans_the_whole_window(self, N):
        plan = an.g_grover_opt(N)
        window = range(1, math.ceil(2.0 * math.sqrt(N)) + 1)
        values = {k: an.g_grover(N, k) for k in window}
        best = min(values.values())
        assert plan.queries == best
        assert plan.k_opt == min(k for k, v in values.items() if v == best)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.g_grover(3, 1)
        with pytest.raises(ValueError):
            an.g_grover(8, 0)
        with pytest.raises(ValueError):
            an.g_grover_opt(2)


class TestMud:
    def test_frozen_values(self):
        assert an.g_mud(5) == pytest.approx(19.0 / 15.0, abs=1e-15)
        assert an.g_mud(8) == pytest.approx(196.0 / 96.0, abs=1e-15)

    @pytest.mark.parametrize("N", range(5, 101, 5))
    def test_satisfies_the_shrinking_recursion(self, N):
        # E(M) = 1 + (M-1)/M * lambda_M * E(M-1), E(4) = 1: a wrong guess
        # goes inconclusive with probability lambda_M and drops one member
        e = 1.0
        for M in range(5, N + 1):
            lam = (M - 4.0) / (M - 2.0)
            e = 1.0 + (M - 1.0) / M * lam * e
        assert an.g_mud(N) == pytest.approx(e, abs=1e-10)

    def test_fullspace_frozen_value(self):
        assert an.g_mud_fullspace(5) == pytest.approx(182.0 / 135.0, abs=1e-14)

    @pytest.mark.parametrize("N", range(5, 13))
    def test_fullspace_matches_the_markov_chain(self, N):
        # uniform guess among r remaining, constant conclusive rate 2/(N-2),
        # free conclusion at r = 1
        s = 2.0 / (N - 2.0)
        e = 0.0
        for r in range(2, N + 1):
            e = 1.0 + (1.0 - 1.0 / r) * (1.0 - s) * e
        assert an.g_mud_fullspace(N) == pytest.approx(e, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            an.g_mud(4)
        with pytest.raises(ValueError):
            an.g_mud_fullspace(4)


class TestConstants:
    def test_exact_expressions(self):
        assert an.POINTER_GAIN == 3.0 + math.sqrt(8.0)
        assert an.TESTSTATE_DIVISOR == 4.0 + math.sqrt(8.0)
        assert an.FULLSPACE_GAMMA == 2.0 + math.sqrt(8.0)
        assert an.CLASSICAL_RATIO == 2.0 + math.sqrt(2.0)
        assert an.MUD_DIVISOR == 4.0
        assert an.MUD_FULL_DIVISOR == 4.0 / (1.0 + math.exp(-2.0))
        gamma = an.FULLSPACE_GAMMA
        assert an.TESTSTATE_FULL_DIVISOR == gamma**2 / (math.exp(-gamma) - 1.0 + gamma)

    def test_grover_angle_solves_tan_t_equals_2t(self):
        assert 1.16 < an.GROVER_ANGLE < 1.17
        assert math.tan(an.GROVER_ANGLE) - 2.0 * an.GROVER_ANGLE == pytest.approx(0.0, abs=1e-10)
        assert an.GROVER_LIMIT == (an.GROVER_ANGLE / 2.0) / math.sin(an.GROVER_ANGLE) ** 2
        assert an.GROVER_K_COEF == an.GROVER_ANGLE / 2.0

    def test_coefficients_describe_the_large_n_costs(self):
        N = 1 << 16
        assert an.g_teststate(N) * an.TESTSTATE_DIVISOR / N == pytest.approx(1.0, rel=2e-2)
        assert an.g_teststate_fullspace(N) * an.TESTSTATE_FULL_DIVISOR / N == pytest.approx(
            1.0, rel=2e-2
        )
        assert an.g_mud(N) * an.MUD_DIVISOR / N == pytest.approx(1.0, rel=2e-2)
        assert an.g_mud_fullspace(N) * an.MUD_FULL_DIVISOR / N == pytest.approx(1.0, rel=2e-2)
        assert an.g_grover_opt(N).queries / math.sqrt(N) == pytest.approx(
            an.GROVER_LIMIT, rel=2e-2
        )


class TestComparisonCurves:
    def test_points_match_the_scalar_functions(self):
        classical, grover, teststate = an.comparison_curves(4, 40, 3)
        ns = [N for N, _ in classical.points]
        assert ns == list(range(4, 41, 3))
        for (N, gc), (_, gq), (_, gt) in zip(classical.points, grover.points, teststate.points):
            assert gc == an.g_classical(N)
            assert gq == an.g_grover_opt(N).queries
            assert gt == pytest.approx(an.g_teststate(N), abs=1e-12)

    def test_strategy_tags(self):
        curves = an.comparison_curves(4, 10)
        assert [c.strategy for c in curves] == ["classical", "grover", "teststate_relevant"]

    def test_quantum_strategies_beat_classical(self):
        classical, grover, teststate = an.comparison_curves(16, 256, 16)
        for (_, gc), (_, gq), (_, gt) in zip(classical.points, grover.points, teststate.points):
            assert gq < gt < gc

    def test_validation(self):
        with pytest.raises(ValueError):
            an.comparison_curves(3, 10)
        with pytest.raises(ValueError):
            an.comparison_curves(10, 4)
        with pytest.raises(ValueError):
            an.comparison_curves(4, 10, 0)
