"""Strategy runners and the Monte Carlo estimator."""
import numpy as np
import pytest

from oraclesearch import analytics as an
from oraclesearch import strategies as st
from oraclesearch.oracle import BlackBox

SEED = 20260814


def run_many(runner, N, trials, seed=SEED, **kwargs):
    transcripts = []
    for t in range(trials):
        rng = np.random.default_rng((seed, t))
        hidden = int(rng.integers(N))
        box = BlackBox(hidden, N)
        transcript = runner(box, rng, **kwargs)
        assert transcript.found == hidden
        assert transcript.queries == box.queries
        transcripts.append(transcript)
    return transcripts


class TestClassicalRunner:
    def test_always_correct_and_bounded(self):
        for transcript in run_many(st.run_classical, 6, 300):
            assert transcript.queries <= 5
            assert len(transcript.guesses) == len(transcript.outcomes) == transcript.queries
            for res in transcript.outcomes:
                assert res.kind in ("yes", "inconclusive")

    def test_mean_matches_closed_form(self):
        counts = [t.queries for t in run_many(st.run_classical, 6, 4000)]
        mean = np.mean(counts)
        sigma = np.std(counts, ddof=1) / np.sqrt(len(counts))
        assert abs(mean - an.g_classical(6)) <= 4.0 * sigma

    def test_single_candidate_needs_no_query(self):
        transcript = st.run_classical(BlackBox(0, 1), np.random.default_rng(SEED))
        assert transcript.queries == 0
        assert transcript.found == 0


class TestTeststateRelevant:
    def test_four_candidates_take_one_query(self):
        for transcript in run_many(st.run_teststate_relevant, 4, 100):
            assert transcript.queries == 1

    def test_always_correct(self):
        for transcript in run_many(st.run_teststate_relevant, 8, 500):
            assert transcript.queries >= 1
            assert transcript.outcomes[-1].kind in ("yes", "points-to")

    def test_validation(self):
        with pytest.raises(ValueError, match="at least 4"):
            st.run_teststate_relevant(BlackBox(0, 3), np.random.default_rng(SEED))


class TestTeststateFull:
    def test_always_correct(self):
        run_many(st.run_teststate_full, 8, 500)

    def test_free_conclusion_caps_the_query_count(self):
        # guesses never repeat, so N-1 misses settle the last candidate free
        counts = [t.queries for t in run_many(st.run_teststate_full, 5, 2000)]
        assert max(counts) <= 4
        assert min(counts) >= 1

    def test_validation(self):
        with pytest.raises(ValueError, match="at least 5"):
            st.run_teststate_full(BlackBox(0, 4), np.random.default_rng(SEED))


class TestMudRunners:
    def test_relevant_always_correct(self):
        run_many(st.run_mud, 8, 500)

    def test_fullspace_always_correct(self):
        run_many(st.run_mud, 8, 500, fullspace=True)

    def test_conclusive_pointer_ends_the_search(self):
        for transcript in run_many(st.run_mud, 16, 300):
            for res in transcript.outcomes[:-1]:
                assert res.kind == "inconclusive"  # anything else terminates

    def test_validation(self):
        with pytest.raises(ValueError, match="at least 5"):
            st.run_mud(BlackBox(0, 4), np.random.default_rng(SEED))


class TestGroverVerified:
    def test_two_queries_at_four(self):
        runner = lambda box, rng: st.run_grover_verified(box, 1, rng)
        for transcript in run_many(runner, 4, 200):
            assert transcript.queries == 2
            assert transcript.outcomes[-1].kind == "yes"

    def test_correct_at_sixteen(self):
        run_many(lambda box, rng: st.run_grover_verified(box, 2, rng), 16, 300)

    def test_pointer_option_stays_correct(self):
        runner = lambda box, rng: st.run_grover_verified(box, 2, rng, use_pointer=True)
        run_many(runner, 16, 300)


class TestPairConfirm:
    def test_exhaustive_truth_table(self):
        n, N = 3, 8
        for j in range(N):
            for hidden in range(N):
                box = BlackBox(hidden, N)
                confirmed, queries = st.run_pair_confirm(box, j)
                assert confirmed == (hidden == j)
                paired = hidden in (j, j ^ (N >> 1))
                assert queries == (2 if paired else 1)
                assert box.queries == queries

    def test_validation(self):
        with pytest.raises(ValueError, match="power-of-two"):
            st.run_pair_confirm(BlackBox(0, 6), 0)
        with pytest.raises(ValueError, match="outside"):
            st.run_pair_confirm(BlackBox(0, 8), 8)


class TestEstimate:
    def test_exact_mean_at_the_degenerate_size(self):
        stats = st.estimate("teststate_relevant", 4, 500, SEED)
        assert stats.mean == 1.0
        assert stats.stderr == 0.0
        assert (stats.strategy, stats.N, stats.trials, stats.seed) == (
            "teststate_relevant",
            4,
            500,
            SEED,
        )

    def test_grover_exact_at_four(self):
        stats = st.estimate("grover", 4, 500, SEED, k=1)
        assert stats.mean == 2.0
        assert stats.stderr == 0.0

    def test_repeat_runs_are_bit_identical(self):
        a = st.estimate("mud_relevant", 8, 400, SEED)
        b = st.estimate("mud_relevant", 8, 400, SEED)
        assert (a.mean, a.stderr) == (b.mean, b.stderr)

    def test_worker_count_does_not_change_the_aggregate(self):
        a = st.estimate("classical", 16, 500, SEED)
        b = st.estimate("classical", 16, 500, SEED, workers=2)
        c = st.estimate("classical", 16, 500, SEED, workers=3)
        assert (a.mean, a.stderr) == (b.mean, b.stderr) == (c.mean, c.stderr)

    def test_z_score_sanity(self):
        stats = st.estimate("classical", 16, 3000, SEED)
        z = (stats.mean - an.g_classical(16)) / stats.stderr
        assert abs(z) < 4.0

    def test_single_trial_has_no_spread(self):
        stats = st.estimate("classical", 8, 1, SEED)
        assert stats.stderr == 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="unknown strategy"):
            st.estimate("quantum", 8, 10, SEED)
        with pytest.raises(ValueError, match="trials"):
            st.estimate("classical", 8, 0, SEED)
        with pytest.raises(ValueError, match="seed"):
            st.estimate("classical", 8, 10, -1)
        with pytest.raises(ValueError, match="power-of-two"):
            st.estimate("grover", 6, 10, SEED)
        with pytest.raises(ValueError, match="positive"):
            st.estimate("grover", 8, 10, SEED, k=0)
