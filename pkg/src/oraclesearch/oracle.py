"""Phase oracles, query accounting, and the Grover iteration.

The oracle for index j flips the sign of the |j> amplitude and leaves every
other amplitude alone. A BlackBox hides one such index and counts queries;
search strategies only ever see the counter and the returned states.
"""
from __future__ import annotations

import numpy as np

from .statevector import HADAMARD, Ket, apply_single, basis_ket, sample_index


def apply_oracle(j: int, state: Ket) -> Ket:
    """Apply I - 2|j><j| to the state."""
    if not 0 <= j < state.dim:
        raise ValueError(f"oracle index {j} outside [0, {state.dim})")
    amps = state.amps.copy()
    amps[j] = -amps[j]
    return Ket(amps)


class BlackBox:
    """A phase oracle with a hidden index and a query counter."""

    def __init__(self, hidden_index: int, dim: int):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        if not 0 <= hidden_index < dim:
            raise ValueError(f"hidden index {hidden_index} outside [0, {dim})")
        self._hidden = hidden_index
        self.dim = dim
        self.queries = 0

    def query(self, state: Ket) -> Ket:
        if state.dim != self.dim:
            raise ValueError(f"state dimension {state.dim} does not match box dimension {self.dim}")
        self.queries += 1
        return apply_oracle(self._hidden, state)

    def reveal(self) -> int:
        """Disclose the hidden index. For test assertions only."""
        return self._hidden

    def __repr__(self) -> str:
        return f"BlackBox(dim={self.dim}, queries={self.queries})"


def diffusion(state: Ket) -> Ket:
    """Inversion about the average: c_i -> 2*mean(c) - c_i.

    Equals -H^n (I - 2|0><0|) H^n on an n-qubit register, so the dimension
    must be a power of two.
    """
    state.n_qubits  # raises for non power-of-two dimensions
    mean = state.amps.mean()
    return Ket(2.0 * mean - state.amps)


def success_probability(N: int, k: int) -> float:
    """Probability that k Grover steps land on the hidden index.

    sin((2k+1) * theta_N)^2 with sin(theta_N) = 1/sqrt(N).
    """
    if N < 2:
        raise ValueError(f"need at least two indices, got N={N}")
    if k < 0:
        raise ValueError(f"step count must be nonnegative, got {k}")
    theta = np.arcsin(1.0 / np.sqrt(N))
    return float(np.sin((2 * k + 1) * theta) ** 2)


def grover_cycle(box: BlackBox, k: int, rng: np.random.Generator) -> int:
    """Run one Grover cycle of k queries against the box and measure.

    Prepares the uniform superposition H^n|0...0>, applies (D * O)^k, and
    samples the computational basis. Returns the measured index.
    """
    if k < 1:
        raise ValueError(f"a Grover cycle needs at least one query, got k={k}")
    n = (box.dim - 1).bit_length()
    if box.dim < 4 or (1 << n) != box.dim:
        raise ValueError(f"Grover cycles need a power-of-two dimension >= 4, got {box.dim}")
    state = basis_ket(box.dim, 0)
    for q in range(1, n + 1):
        state = apply_single(HADAMARD, q, state)
    for _ in range(k):
        state = diffusion(box.query(state))
    return sample_index(state, rng)
