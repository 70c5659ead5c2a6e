"""Search strategies against a hidden phase oracle, plus Monte Carlo driving.

Every runner takes a BlackBox and an rng, spends queries until it knows the
hidden index for sure, and returns a transcript whose query count matches
the box counter. Trials in `estimate` draw their randomness from per-trial
substreams derived from (seed, trial ordinal), so aggregates do not depend
on execution order or worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .analytics import g_grover_opt
from .measurement import PomOutcome, build_mud, mud_measure, srm_measure
from .oracle import BlackBox, grover_cycle
from .statevector import HADAMARD, apply_single, basis_ket, sample_index
from .teststate import CandidateSet, srm_basis, test_state

STRATEGIES = (
    "classical",
    "teststate_relevant",
    "teststate_full",
    "mud_relevant",
    "mud_full",
    "grover",
)


@dataclass(frozen=True)
class SearchTranscript:
    strategy: str
    guesses: tuple[int, ...]
    outcomes: tuple[PomOutcome, ...]
    queries: int
    found: int


@dataclass(frozen=True)
class StrategyStats:
    strategy: str
    N: int
    trials: int
    mean: float
    stderr: float
    seed: int


def run_classical(box: BlackBox, rng: np.random.Generator) -> SearchTranscript:
    """Test untried indices in random order until a hit.

    Each test costs one query and answers only hit or miss (recorded as
    "inconclusive"); once a single index is left untried it is concluded
    for free.
    """
    N = box.dim
    if N == 1:
        return SearchTranscript("classical", (), (), 0, 0)
    start = box.queries
    order = rng.permutation(N)
    guesses: list[int] = []
    outcomes: list[PomOutcome] = []
    found = -1
    for i, g in enumerate(order):
        g = int(g)
        if i == N - 1:
            found = g  # every other index already missed
            break
        probe = basis_ket(N, g)
        answer = box.query(probe)
        guesses.append(g)
        if answer.amps[g].real < 0.0:  # the oracle flips exactly its own index
            outcomes.append(PomOutcome.yes())
            found = g
            break
        outcomes.append(PomOutcome.inconclusive())
    return SearchTranscript(
        "classical", tuple(guesses), tuple(outcomes), box.queries - start, found
    )


def _reject_tiny(N: int, minimum: int, what: str) -> None:
    if N < minimum:
        raise ValueError(
            f"{what} needs at least {minimum} candidates, got N={N}; "
            "with 2 or 3 candidates the test states carry no usable signal"
        )


def run_teststate_relevant(box: BlackBox, rng: np.random.Generator) -> SearchTranscript:
    """Shrinking-set test-state search with the pointer as the next guess.

    Each round queries the test state of the current guess and applies the
    square-root measurement. A hit ends the search; otherwise the guess is
    dropped and the pointer becomes the next guess. Once 4 candidates
    remain, the single shared test state settles the identity in one query.
    """
    N = box.dim
    _reject_tiny(N, 4, "the test-state search")
    start = box.queries
    cset = CandidateSet.full(N)
    guess = int(rng.integers(N))
    guesses: list[int] = []
    outcomes: list[PomOutcome] = []
    while True:
        state = box.query(test_state(cset, guess))
        res = srm_measure(state, srm_basis(cset, guess), rng)
        guesses.append(guess)
        outcomes.append(res)
        if res.kind == "yes":
            found = guess
            break
        if cset.size == 4:
            found = res.pointer  # the pointer is exact once 4 candidates remain
            break
        cset = cset.without(guess)
        guess = res.pointer
    return SearchTranscript(
        "teststate_relevant", tuple(guesses), tuple(outcomes), box.queries - start, found
    )


def run_teststate_full(box: BlackBox, rng: np.random.Generator) -> SearchTranscript:
    """Test-state search that keeps using the full N-candidate test states.

    Misses only exclude the guess. The pointer is followed when it has not
    been excluded yet, otherwise the next guess is uniform over the
    unexcluded rest; a single remaining candidate is concluded for free.
    """
    N = box.dim
    _reject_tiny(N, 5, "the full-space test-state search")
    start = box.queries
    full = CandidateSet.full(N)
    remaining = list(range(N))
    excluded: set[int] = set()
    guess = int(rng.integers(N))
    guesses: list[int] = []
    outcomes: list[PomOutcome] = []
    while True:
        if len(remaining) == 1:
            found = remaining[0]
            break
        state = box.query(test_state(full, guess))
        res = srm_measure(state, srm_basis(full, guess), rng)
        guesses.append(guess)
        outcomes.append(res)
        if res.kind == "yes":
            found = guess
            break
        excluded.add(guess)
        remaining.remove(guess)
        if res.pointer not in excluded:
            guess = res.pointer
        else:
            guess = remaining[int(rng.integers(len(remaining)))]
    return SearchTranscript(
        "teststate_full", tuple(guesses), tuple(outcomes), box.queries - start, found
    )


def run_mud(box: BlackBox, rng: np.random.Generator, fullspace: bool = False) -> SearchTranscript:
    """Test-state search with unambiguous discrimination after a miss.

    A conclusive pointer names the oracle with certainty, so the search
    terminates on it without spending a confirmation query. Inconclusive
    rounds carry no pointer: the next guess is uniform over the candidates
    not yet ruled out. The shrinking variant drops the guess from the set
    each round and finishes through the shared 4-candidate test state; the
    full-space variant keeps the N-candidate states and concludes for free
    when one candidate remains.
    """
    N = box.dim
    _reject_tiny(N, 5, "the unambiguous-discrimination search")
    start = box.queries
    tag = "mud_full" if fullspace else "mud_relevant"
    guesses: list[int] = []
    outcomes: list[PomOutcome] = []
    if fullspace:
        full = CandidateSet.full(N)
        remaining = list(range(N))
        guess = int(rng.integers(N))
        while True:
            if len(remaining) == 1:
                found = remaining[0]
                break
            state = box.query(test_state(full, guess))
            guesses.append(guess)
            # a hit leaves amplitude -a on the guess, a miss leaves +a
            if state.amps[guess].real < 0.0:
                outcomes.append(PomOutcome.yes())
                found = guess
                break
            res = mud_measure(state, build_mud(full, guess), rng)
            outcomes.append(res)
            if res.kind == "points-to":
                found = res.pointer
                break
            remaining.remove(guess)
            guess = remaining[int(rng.integers(len(remaining)))]
    else:
        cset = CandidateSet.full(N)
        guess = int(rng.integers(N))
        while True:
            state = box.query(test_state(cset, guess))
            guesses.append(guess)
            if cset.size == 4:
                res = srm_measure(state, srm_basis(cset, guess), rng)
                outcomes.append(res)
                found = guess if res.kind == "yes" else res.pointer
                break
            if state.amps[guess].real < 0.0:
                outcomes.append(PomOutcome.yes())
                found = guess
                break
            res = mud_measure(state, build_mud(cset, guess), rng)
            outcomes.append(res)
            if res.kind == "points-to":
                found = res.pointer
                break
            cset = cset.without(guess)
            guess = cset.members[int(rng.integers(cset.size))]
    return SearchTranscript(tag, tuple(guesses), tuple(outcomes), box.queries - start, found)


def run_grover_verified(
    box: BlackBox,
    k: int,
    rng: np.random.Generator,
    use_pointer: bool = False,
) -> SearchTranscript:
    """Grover cycles of k queries, each candidate checked by one test state.

    A cycle's measured index is verified only when not already known to be
    wrong. Verification is a full-space test-state query followed by the
    square-root measurement read as hit or miss; the miss pointer is
    ignored unless use_pointer is set, in which case an unexcluded pointer
    is verified before the next cycle. Having excluded all but one index
    concludes the search without further queries.
    """
    N = box.dim
    start = box.queries
    full = CandidateSet.full(N)
    known_wrong: set[int] = set()
    candidate: int | None = None
    guesses: list[int] = []
    outcomes: list[PomOutcome] = []
    while True:
        if len(known_wrong) == N - 1:
            found = next(j for j in range(N) if j not in known_wrong)
            break
        if candidate is None:
            m = grover_cycle(box, k, rng)
            if m in known_wrong:
                continue
        else:
            m, candidate = candidate, None
        state = box.query(test_state(full, m))
        res = srm_measure(state, srm_basis(full, m), rng)
        guesses.append(m)
        outcomes.append(res)
        if res.kind == "yes":
            found = m
            break
        known_wrong.add(m)
        if use_pointer and res.pointer not in known_wrong:
            candidate = res.pointer
    return SearchTranscript(
        "grover", tuple(guesses), tuple(outcomes), box.queries - start, found
    )


def run_pair_confirm(box: BlackBox, j: int) -> tuple[bool, int]:
    """Confirm or refute a candidate j with one or two pairing queries.

    Round one sends |0 chi> (j with qubit 1 cleared) through hadamard on
    qubit 1, the box, hadamard on qubit 1 again; qubit 1 then reads 1
    exactly when the oracle is j or j with qubit 1 flipped. A second round
    paired across qubit 2 separates those two. Returns (oracle is j,
    queries used). Deterministic, so no rng is involved.
    """
    N = box.dim
    n = (N - 1).bit_length()
    if N < 4 or (1 << n) != N:
        raise ValueError(f"pair confirmation needs a power-of-two dimension >= 4, got {N}")
    if not 0 <= j < N:
        raise ValueError(f"candidate {j} outside [0, {N})")
    start = box.queries

    def round_on(pivot: int) -> int:
        bit = 1 << (n - pivot)
        state = basis_ket(N, j & ~bit)
        state = apply_single(HADAMARD, pivot, state)
        state = box.query(state)
        state = apply_single(HADAMARD, pivot, state)
        index = int(np.argmax(np.abs(state.amps)))
        return (index >> (n - pivot)) & 1

    if round_on(1) == 0:
        return False, box.queries - start
    return round_on(2) == 1, box.queries - start


def _resolve(strategy: str, N: int, k: int | None):
    if strategy == "classical":
        if N < 1:
            raise ValueError(f"need at least one candidate, got N={N}")
        return run_classical
    if strategy == "teststate_relevant":
        _reject_tiny(N, 4, "the test-state search")
        return run_teststate_relevant
    if strategy == "teststate_full":
        _reject_tiny(N, 5, "the full-space test-state search")
        return run_teststate_full
    if strategy in ("mud_relevant", "mud_full"):
        _reject_tiny(N, 5, "the unambiguous-discrimination search")
        full = strategy == "mud_full"
        return lambda box, rng: run_mud(box, rng, fullspace=full)
    if strategy == "grover":
        n = (N - 1).bit_length()
        if N < 4 or (1 << n) != N:
            raise ValueError(f"Grover search needs a power-of-two N >= 4, got N={N}")
        kk = g_grover_opt(N).k_opt if k is None else k
        if kk < 1:
            raise ValueError(f"cycle length must be positive, got k={kk}")
        return lambda box, rng: run_grover_verified(box, kk, rng)
    raise ValueError(f"unknown strategy {strategy!r}; choose one of {', '.join(STRATEGIES)}")


def _trial_counts(strategy: str, N: int, seed: int, start: int, stop: int, k: int | None) -> np.ndarray:
    runner = _resolve(strategy, N, k)
    counts = np.empty(stop - start, dtype=np.int64)
    for t in range(start, stop):
        rng = np.random.default_rng((seed, t))
        hidden = int(rng.integers(N))
        box = BlackBox(hidden, N)
        transcript = runner(box, rng)
        if transcript.found != hidden:
            raise RuntimeError(
                f"strategy {strategy} concluded {transcript.found} but the oracle was {hidden}"
            )
        counts[t - start] = transcript.queries
    return counts


def estimate(
    strategy: str,
    N: int,
    trials: int,
    seed: int,
    k: int | None = None,
    workers: int = 1,
) -> StrategyStats:
    """Monte Carlo mean query count with per-trial substreams.

    Trial t draws from default_rng((seed, t)) regardless of scheduling, so
    the aggregate is bit-identical for any worker count.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    _resolve(strategy, N, k)  # fail fast on a bad strategy or N
    if workers <= 1:
        counts = _trial_counts(strategy, N, seed, 0, trials, k)
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        counts = np.empty(trials, dtype=np.int64)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                (lo, hi, pool.submit(_trial_counts, strategy, N, seed, int(lo), int(hi), k))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for lo, hi, fut in futures:
                counts[lo:hi] = fut.result()
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / sqrt(trials)) if trials > 1 else 0.0
    return StrategyStats(strategy, N, trials, mean, stderr, seed)
