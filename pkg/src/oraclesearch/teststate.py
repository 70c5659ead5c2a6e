"""Test states over candidate sets and the square-root measurement basis.

For a candidate set of M indices, the test state for guess j puts amplitude
a on |j> and b on every other member, with a = sqrt((M-3)/(2M-4)) and
b = sqrt(1/(2M-4)). Passing it through the oracle either flips the j
amplitude (a hit) or flips one of the b amplitudes (a miss); the hit state
is orthogonal to every miss state, and the miss states form a symmetric
pyramid with pairwise overlap (M-4)/(M-2). The square-root measurement of
that family is an orthonormal basis, so it can be realized as a von Neumann
measurement.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .oracle import apply_oracle
from .statevector import Ket


@dataclass(frozen=True)
class TestAmplitudes:
    """Privileged and common amplitudes (a, b) for a set of M candidates."""

    M: int
    a: float
    b: float


@dataclass(frozen=True)
class SrmCoefficients:
    """Coefficients (x, y) of the measurement kets: y = (1+a)/(M-1), x = 1-y."""

    M: int
    x: float
    y: float


@dataclass(frozen=True)
class CandidateSet:
    """An ordered set of distinct candidate indices inside a larger space."""

    universe_dim: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.universe_dim < 2:
            raise ValueError(f"universe dimension must be at least 2, got {self.universe_dim}")
        members = tuple(int(m) for m in self.members)
        if len(members) == 0:
            raise ValueError("candidate set is empty")
        if len(set(members)) != len(members):
            raise ValueError("candidate indices must be distinct")
        for m in members:
            if not 0 <= m < self.universe_dim:
                raise ValueError(f"candidate {m} outside [0, {self.universe_dim})")
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, dim: int) -> "CandidateSet":
        return cls(dim, tuple(range(dim)))

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members

    def without(self, j: int) -> "CandidateSet":
        if j not in self.members:
            raise ValueError(f"{j} is not in the candidate set")
        return CandidateSet(self.universe_dim, tuple(m for m in self.members if m != j))


def amplitudes(M: int) -> TestAmplitudes:
    """Test-state amplitudes for M candidates; M = 4 gives a = b = 1/2."""
    if M < 3:
        raise ValueError(
            f"no test state exists for {M} candidates; two oracles cannot be told apart this way"
        )
    a = np.sqrt((M - 3) / (2 * M - 4))
    b = np.sqrt(1.0 / (2 * M - 4))
    return TestAmplitudes(M, float(a), float(b))


def srm_coefficients(M: int) -> SrmCoefficients:
    if M < 4:
        raise ValueError(f"the measurement basis needs at least 4 candidates, got {M}")
    a = amplitudes(M).a
    y = (1.0 + a) / (M - 1)
    return SrmCoefficients(M, 1.0 - y, y)


def pyramid_overlap(M: int) -> float:
    """Pairwise overlap of distinct miss states: (M-4)/(M-2)."""
    if M < 3:
        raise ValueError(f"need at least 3 candidates, got {M}")
    return (M - 4) / (M - 2)


@lru_cache(maxsize=512)
def test_state(cset: CandidateSet, j: int) -> Ket:
    """The test state for guess j on the given candidate set."""
    if j not in cset:
        raise ValueError(f"guess {j} is not a member of the candidate set")
    amp = amplitudes(cset.size)
    vec = np.zeros(cset.universe_dim, dtype=np.complex128)
    vec[list(cset.members)] = amp.b
    vec[j] = amp.a
    return Ket(vec)


def processed_state(cset: CandidateSet, j: int, k: int) -> Ket:
    """The test state for guess j after a query to the oracle with index k."""
    if k not in cset:
        raise ValueError(f"oracle index {k} is not a member of the candidate set")
    return apply_oracle(k, test_state(cset, j))


class SrmBasis:
    """Ordered orthonormal measurement kets for guess j on a candidate set.

    Row order follows the member order of the set; the row for member j is
    the hit state itself, the row for member k is b|j> - x|k> + y sum over
    the remaining members. Behaves as a sequence of Kets.
    """

    def __init__(self, cset: CandidateSet, j: int, matrix: np.ndarray):
        self.cset = cset
        self.j = j
        matrix.setflags(write=False)
        self.matrix = matrix

    def __len__(self) -> int:
        return self.cset.size

    def __getitem__(self, i: int) -> Ket:
        return Ket(self.matrix[i])

    def outcome_member(self, i: int) -> int:
        return self.cset.members[i]


@lru_cache(maxsize=512)
def srm_basis(cset: CandidateSet, j: int) -> SrmBasis:
    """Build the square-root measurement basis for guess j."""
    if j not in cset:
        raise ValueError(f"guess {j} is not a member of the candidate set")
    M = cset.size
    if M < 4:
        raise ValueError(f"the measurement basis needs at least 4 candidates, got {M}")
    amp = amplitudes(M)
    coef = srm_coefficients(M)
    members = list(cset.members)
    mat = np.zeros((M, cset.universe_dim), dtype=np.complex128)
    mat[:, members] = coef.y
    mat[:, j] = amp.b
    mat[np.arange(M), members] = -coef.x
    row_j = members.index(j)
    mat[row_j, members] = amp.b
    mat[row_j, j] = -amp.a
    return SrmBasis(cset, j, mat)
