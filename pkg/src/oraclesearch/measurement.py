"""Measurements that drive the search: pointer statistics and the
unambiguous-discrimination alternative.

After a miss, the square-root measurement points at the actual oracle with
probability alpha_L and at each innocent member with probability beta_L,
where L is the number of miss outcomes. The unambiguous measurement trades
that graded pointer for certainty: it either names the oracle outright,
with probability 2/(M-2), or says nothing at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .statevector import Ket
from .teststate import CandidateSet, SrmBasis, amplitudes, pyramid_overlap

LEAK_TOL = 1e-8


@dataclass(frozen=True)
class PomOutcome:
    """One measurement outcome: a hit, a pointer at a member, or nothing."""

    kind: str
    pointer: int | None = None

    def __post_init__(self):
        if self.kind not in ("yes", "points-to", "inconclusive"):
            raise ValueError(f"unknown outcome kind {self.kind!r}")
        if (self.kind == "points-to") != (self.pointer is not None):
            raise ValueError("a pointer is present exactly for points-to outcomes")

    @classmethod
    def yes(cls) -> "PomOutcome":
        return cls("yes")

    @classmethod
    def points_to(cls, k: int) -> "PomOutcome":
        return cls("points-to", int(k))

    @classmethod
    def inconclusive(cls) -> "PomOutcome":
        return cls("inconclusive")


def alpha_beta(L: int) -> tuple[float, float]:
    """Pointer probabilities of the square-root measurement with L miss outcomes.

    With M = L + 1 candidates:
        beta_L  = (sqrt(M-3) - sqrt(2)/sqrt(M-2))^2 / L^2
        alpha_L = 1 - (M-2) * beta_L
    alpha_3 = 1 and beta_3 = 0; L * alpha_L approaches 3 + sqrt(8).
    """
    if L < 3:
        raise ValueError(f"pointer statistics need at least 3 miss outcomes, got L={L}")
    M = L + 1
    beta = (np.sqrt(M - 3) - np.sqrt(2.0) / np.sqrt(M - 2)) ** 2 / L**2
    alpha = 1.0 - (M - 2) * beta
    return float(alpha), float(beta)


def srm_measure(state: Ket, basis: SrmBasis, rng: np.random.Generator) -> PomOutcome:
    """Sample the square-root measurement. One uniform draw per call.

    Outcome i fires with probability |<T_i|state>|^2; the row belonging to
    the guess reports "yes", every other row points at its member. The
    state must be supported on the basis span.
    """
    if state.dim != basis.cset.universe_dim:
        raise ValueError(f"state dimension {state.dim} does not match the basis space")
    proj = basis.matrix.conj() @ state.amps
    probs = proj.real**2 + proj.imag**2
    total = float(probs.sum())
    if 1.0 - total > LEAK_TOL:
        raise ValueError(f"state leaks outside the measurement span: captured {total!r}")
    u = rng.random() * total
    i = min(int(np.searchsorted(np.cumsum(probs), u, side="right")), len(probs) - 1)
    member = basis.outcome_member(i)
    if member == basis.j:
        return PomOutcome.yes()
    return PomOutcome.points_to(member)


class MudPom:
    """Unambiguous-discrimination measurement on the miss pyramid of guess j.

    One conclusive element per pyramid edge, built from the reciprocal kets
    scaled by the uniform factor 1 - overlap, plus an inconclusive element
    completing the identity on the pyramid span. Conclusive outcome k fires
    only on edge k, so a pointer is never wrong.
    """

    def __init__(self, cset: CandidateSet, j: int, edges: np.ndarray, duals: np.ndarray):
        self.cset = cset
        self.j = j
        self.overlap = pyramid_overlap(cset.size)
        self.success = 1.0 - self.overlap
        self.edge_members = tuple(m for m in cset.members if m != j)
        edges.setflags(write=False)
        duals.setflags(write=False)
        self.edges = edges
        self.duals = duals

    def conclusive_element(self, i: int) -> np.ndarray:
        d = self.duals[i]
        return self.success * np.outer(d, d.conj())

    def span_projector(self) -> np.ndarray:
        # sum_k |t_k><d_k| is hermitian and idempotent with range = span
        return self.edges.T @ self.duals.conj()

    def inconclusive_element(self) -> np.ndarray:
        total = sum(self.conclusive_element(i) for i in range(len(self.edge_members)))
        return self.span_projector() - total


@lru_cache(maxsize=512)
def build_mud(cset: CandidateSet, j: int) -> MudPom:
    """Build the unambiguous measurement for guess j on the candidate set."""
    if j not in cset:
        raise ValueError(f"guess {j} is not a member of the candidate set")
    M = cset.size
    if M < 5:
        raise ValueError(
            f"unambiguous discrimination needs at least 5 candidates, got {M}; "
            "a 4-candidate pyramid is already orthogonal"
        )
    lam = pyramid_overlap(M)
    L = M - 1
    amp = amplitudes(M)
    others = [m for m in cset.members if m != j]
    edges = np.zeros((L, cset.universe_dim), dtype=np.complex128)
    edges[:, others] = amp.b
    edges[:, j] = amp.a
    edges[np.arange(L), others] = -amp.b
    # reciprocal kets via the inverse Gram of the pyramid:
    # d_k = (edge_k - lam/(1 - lam + L*lam) * sum_edges) / (1 - lam)
    col_sum = edges.sum(axis=0)
    duals = (edges - (lam / (1.0 - lam + L * lam)) * col_sum) / (1.0 - lam)
    return MudPom(cset, j, edges, duals)


def mud_measure(state: Ket, pom: MudPom, rng: np.random.Generator) -> PomOutcome:
    """Sample the unambiguous measurement. One uniform draw per call.

    Conclusive outcome k fires with probability <state|E_k|state>; the
    remainder within the pyramid span is inconclusive. The state must lie
    in the span.
    """
    if state.dim != pom.cset.universe_dim:
        raise ValueError(f"state dimension {state.dim} does not match the measurement space")
    amps = state.amps
    overlaps = pom.duals.conj() @ amps
    probs = pom.success * (overlaps.real**2 + overlaps.imag**2)
    # support check: <state|P_span|state> through the same reciprocal kets
    captured = float(np.vdot(amps, pom.edges.T @ overlaps).real)
    if 1.0 - captured > LEAK_TOL:
        raise ValueError(f"state leaks outside the pyramid span: captured {captured!r}")
    total = float(probs.sum())
    u = rng.random() * captured
    if u >= total:
        return PomOutcome.inconclusive()
    i = min(int(np.searchsorted(np.cumsum(probs), u, side="right")), len(probs) - 1)
    return PomOutcome.points_to(pom.edge_members[i])


def first_query_success(N: int) -> float:
    """Chance that a single random test-state query names the oracle.

    1/N for the guess itself plus (N-1)/N * 2/(N-2) from a conclusive
    pointer: (3N-4)/(N(N-2)).
    """
    if N < 5:
        raise ValueError(f"needs at least 5 candidates, got {N}")
    return (3 * N - 4) / (N * (N - 2))


__all__ = [
    "PomOutcome",
    "alpha_beta",
    "srm_measure",
    "MudPom",
    "build_mud",
    "mud_measure",
    "first_query_success",
]
