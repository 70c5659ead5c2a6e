"""Dense state-vector primitives for small quantum registers.

Amplitudes live in contiguous complex128 arrays indexed by basis integers.
Qubit 1 is the most significant bit of the basis index, so a register of n
qubits stores the basis ket |b1 b2 ... bn> at index sum_i b_i * 2**(n - i).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-10

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


def ry(angle: float) -> np.ndarray:
    """Return exp(-i*angle*Y), a real rotation in the |0>,|1> plane."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Ket:
    """Normalized pure state. The amplitude array is adopted and frozen."""

    amps: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amps, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError(f"ket amplitudes must be one-dimensional, got shape {arr.shape}")
        if arr.size < 2:
            raise ValueError(f"ket needs at least two amplitudes, got {arr.size}")
        norm2 = float(np.vdot(arr, arr).real)
        if abs(norm2 - 1.0) > ATOL:
            raise ValueError(f"ket is not normalized: sum |amps|^2 = {norm2!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def n_qubits(self) -> int:
        n = self.dim.bit_length() - 1
        if 1 << n != self.dim:
            raise ValueError(f"dimension {self.dim} is not a power of two")
        return n


def basis_ket(dim: int, index: int) -> Ket:
    """The computational basis ket |index> in a dim-dimensional space."""
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside [0, {dim})")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return Ket(amps)


def inner(u: Ket, v: Ket) -> complex:
    """The inner product <u|v>."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return complex(np.vdot(u.amps, v.amps))


def _check_unitary(gate: np.ndarray) -> np.ndarray:
    gate = np.asarray(gate, dtype=np.complex128)
    if gate.shape != (2, 2):
        raise ValueError(f"expected a 2x2 gate, got shape {gate.shape}")
    if not np.allclose(gate @ gate.conj().T, np.eye(2), atol=ATOL, rtol=0.0):
        raise ValueError("gate is not unitary within tolerance")
    return gate


def _check_qubit(qubit: int, n: int) -> None:
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit index {qubit} outside register of {n} qubits")


def apply_single(gate: np.ndarray, qubit: int, state: Ket) -> Ket:
    """Apply a single-qubit gate to the given qubit (1-based, MSB first)."""
    gate = _check_unitary(gate)
    n = state.n_qubits
    _check_qubit(qubit, n)
    cube = state.amps.reshape(1 << (qubit - 1), 2, -1)
    a0, a1 = cube[:, 0, :], cube[:, 1, :]
    out = np.empty_like(cube)
    out[:, 0, :] = gate[0, 0] * a0 + gate[0, 1] * a1
    out[:, 1, :] = gate[1, 0] * a0 + gate[1, 1] * a1
    return Ket(out.reshape(-1))


def apply_controlled(
    gate: np.ndarray,
    controls: tuple[tuple[int, int], ...],
    target: int,
    state: Ket,
) -> Ket:
    """Apply a controlled single-qubit gate.

    Each control is a (qubit, required_bit) pair; the gate acts on the
    target qubit only where every control qubit holds its required bit.
    Amplitudes outside the controlled subspace are untouched.
    """
    gate = _check_unitary(gate)
    n = state.n_qubits
    _check_qubit(target, n)
    seen = {target}
    for q, b in controls:
        _check_qubit(q, n)
        if q in seen:
            raise ValueError(f"qubit {q} appears twice in the controlled gate")
        seen.add(q)
        if b not in (0, 1):
            raise ValueError(f"control bit must be 0 or 1, got {b}")
    idx = np.arange(state.dim)
    mask = np.ones(state.dim, dtype=bool)
    for q, b in controls:
        mask &= ((idx >> (n - q)) & 1) == b
    tbit = 1 << (n - target)
    i0 = idx[mask & ((idx & tbit) == 0)]
    i1 = i0 | tbit
    out = state.amps.copy()
    a0, a1 = out[i0], out[i1]
    out[i0] = gate[0, 0] * a0 + gate[0, 1] * a1
    out[i1] = gate[1, 0] * a0 + gate[1, 1] * a1
    return Ket(out)


def sample_index(state: Ket, rng: np.random.Generator) -> int:
    """Sample a basis index from |amps|^2. Consumes exactly one uniform draw."""
    probs = state.amps.real**2 + state.amps.imag**2
    cum = np.cumsum(probs)
    u = rng.random() * cum[-1]
    return min(int(np.searchsorted(cum, u, side="right")), state.dim - 1)
