"""Closed-form expected query counts for the search strategies.

Every function here is pure arithmetic; the Monte Carlo estimators in
`strategies` are checked against these values. Asymptotic coefficients are
kept as named constants with their defining expressions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .measurement import alpha_beta
from .oracle import success_probability

# limit of L * alpha_L: the pointer lands on the oracle ~ (3 + sqrt(8))/L
POINTER_GAIN = 3.0 + math.sqrt(8.0)

# shrinking-set test-state search grows like N / (4 + sqrt(8))
TESTSTATE_DIVISOR = 4.0 + math.sqrt(8.0)

# survival decay rate of the full-space search, gamma = 2 + sqrt(8)
FULLSPACE_GAMMA = 2.0 + math.sqrt(8.0)

# full-space test-state search grows like N / 6.08
TESTSTATE_FULL_DIVISOR = FULLSPACE_GAMMA**2 / (
    math.exp(-FULLSPACE_GAMMA) - 1.0 + FULLSPACE_GAMMA
)

# limit of G_classical / G_teststate
CLASSICAL_RATIO = 2.0 + math.sqrt(2.0)

# smallest positive root of tan(t) = 2t; tan - 2t changes sign inside [1, 1.5]
GROVER_ANGLE = float(brentq(lambda t: math.tan(t) - 2.0 * t, 1.0, 1.5, xtol=1e-14))

# Grover with verification grows like GROVER_LIMIT * sqrt(N), about 0.6900
GROVER_LIMIT = (GROVER_ANGLE / 2.0) / math.sin(GROVER_ANGLE) ** 2

# optimal queries per cycle approach GROVER_K_COEF * sqrt(N), about 0.58
GROVER_K_COEF = GROVER_ANGLE / 2.0

# unambiguous-discrimination searches grow like N/4 and N/3.52
MUD_DIVISOR = 4.0
MUD_FULL_DIVISOR = 4.0 / (1.0 + math.exp(-2.0))


@dataclass(frozen=True)
class QueryCurve:
    """Expected-query values of one strategy over a range of N."""

    strategy: str
    points: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class GroverPlan:
    """Optimal cycle length and resulting query count for one N."""

    N: int
    k_opt: int
    queries: float


def g_classical(N: int) -> float:
    """Expected queries of the classical elimination search: (N+1)/2 - 1/N."""
    if N < 1:
        raise ValueError(f"need at least one candidate, got N={N}")
    return (N + 1) / 2.0 - 1.0 / N


def recurrence_step(m: int, alpha: float, beta: float, g: float) -> float:
    """One step of the shrinking-set recurrence.

    G(m+1) = 1 + m/(m+1) * (alpha - beta) + m^2 * beta/(m+1) * G(m).
    Substituting alpha = beta = 1/m reproduces the classical curve.
    """
    return 1.0 + m * (alpha - beta) / (m + 1) + m * m * beta / (m + 1) * g


def _teststate_table(N: int) -> np.ndarray:
    # values[i] = G_T(i + 4) for i in 0..N-4, iterated from G_T(4) = 1
    ms = np.arange(4, N, dtype=np.float64)
    beta = (np.sqrt(ms - 2) - np.sqrt(2.0) / np.sqrt(ms - 1)) ** 2 / ms**2
    alpha = 1.0 - (ms - 1) * beta
    values = np.empty(N - 3)
    values[0] = 1.0
    g = 1.0
    alphas, betas = alpha.tolist(), beta.tolist()
    for i, m in enumerate(range(4, N)):
        g = recurrence_step(m, alphas[i], betas[i], g)
        values[i + 1] = g
    return values


def g_teststate(N: int) -> float:
    """Expected queries of the shrinking-set test-state search.

    Iterates the recurrence from G_T(4) = 1; G_T(5) = 9/5.
    """
    if N < 4:
        raise ValueError(f"the test-state search needs at least 4 candidates, got N={N}")
    if N == 4:
        return 1.0
    return float(_teststate_table(N)[-1])


def termination_probs(N: int) -> np.ndarray:
    """Probability that the shrinking-set search ends at round m = 1..N-3.

    p_1 = 1/N; afterwards the pointer of round m-1 is right with
    probability alpha_{N-m+1}; a 4-candidate set always terminates.
    """
    if N < 5:
        raise ValueError(f"the round distribution needs at least 5 candidates, got N={N}")
    probs = np.empty(N - 3)
    probs[0] = 1.0 / N
    survive = (N - 1) / N
    for m in range(2, N - 3):
        alpha, _ = alpha_beta(N - m + 1)
        probs[m - 1] = survive * alpha
        survive *= 1.0 - alpha
    probs[N - 4] = survive
    return probs


def _power(x: float, n: int) -> float:
    # x**n in log space; avoids surprises for N beyond ~1e4
    if x == 0.0:
        return 0.0
    return math.exp(n * math.log(x))


def g_teststate_fullspace(N: int) -> float:
    """Expected queries when every round reuses the full N-candidate test state.

    With x = (N-1) * beta_{N-1}:
        (2-x)/(1-x) - (1 - x^N)/(N (1-x)^2) - x^(N-2)/N.
    """
    if N < 5:
        raise ValueError(f"the full-space search needs at least 5 candidates, got N={N}")
    _, beta = alpha_beta(N - 1)
    x = (N - 1) * beta
    xn = _power(x, N)
    return float(
        (2.0 - x) / (1.0 - x)
        - (1.0 - xn) / (N * (1.0 - x) ** 2)
        - _power(x, N - 2) / N
    )


def g_grover(N: int, k: int) -> float:
    """Expected queries of Grover cycles of length k with test-state checks.

    k/p for the cycles plus (N-p)/(1 + (N-2)p) for the verifications,
    where p is the k-step success probability.
    """
    if N < 4:
        raise ValueError(f"Grover search needs at least 4 candidates, got N={N}")
    if k < 1:
        raise ValueError(f"cycle length must be positive, got k={k}")
    p = success_probability(N, k)
    if p <= 0.0:
        raise ValueError(f"k={k} never finds the oracle at N={N}")
    return k / p + (N - p) / (1.0 + (N - 2) * p)


def g_grover_opt(N: int) -> GroverPlan:
    """Scan k = 1 .. ceil(2 sqrt(N)) for the cheapest cycle length.

    Ties go to the smallest k. N = 4 gives k = 1 and exactly 2 queries.
    """
    if N < 4:
        raise ValueError(f"Grover search needs at least 4 candidates, got N={N}")
    best_k, best_g = 1, g_grover(N, 1)
    for k in range(2, math.ceil(2.0 * math.sqrt(N)) + 1):
        g = g_grover(N, k)
        if g < best_g:
            best_k, best_g = k, g
    return GroverPlan(N, best_k, best_g)


def g_mud(N: int) -> float:
    """Expected queries of the shrinking-set unambiguous search.

    (N-1)(3N+4)/(12N); a conclusive pointer ends the search outright.
    """
    if N < 5:
        raise ValueError(f"the unambiguous search needs at least 5 candidates, got N={N}")
    return (N - 1) * (3 * N + 4) / (12.0 * N)


def g_mud_fullspace(N: int) -> float:
    """Expected queries of the full-space unambiguous search.

    With x = (N-4)/(N-2):
        1/(1-x) - (x - x^(N+1))/(N (1-x)^2) - x^(N-1)/N.
    """
    if N < 5:
        raise ValueError(f"the unambiguous search needs at least 5 candidates, got N={N}")
    x = (N - 4) / (N - 2)
    return float(
        1.0 / (1.0 - x)
        - (x - _power(x, N + 1)) / (N * (1.0 - x) ** 2)
        - _power(x, N - 1) / N
    )


def comparison_curves(n_min: int, n_max: int, step: int = 1):
    """Classical, Grover-at-k_opt, and test-state query curves over a range."""
    if not 4 <= n_min < n_max:
        raise ValueError(f"need 4 <= n_min < n_max, got [{n_min}, {n_max}]")
    if step < 1:
        raise ValueError(f"step must be positive, got {step}")
    ns = list(range(n_min, n_max + 1, step))
    table = _teststate_table(max(ns))
    classical = tuple((N, g_classical(N)) for N in ns)
    grover = tuple((N, g_grover_opt(N).queries) for N in ns)
    teststate = tuple((N, 1.0 if N == 4 else float(table[N - 4])) for N in ns)
    return (
        QueryCurve("classical", classical),
        QueryCurve("grover", grover),
        QueryCurve("teststate_relevant", teststate),
    )
