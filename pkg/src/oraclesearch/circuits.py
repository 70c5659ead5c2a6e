"""Gate-level constructions: test-state preparation, the measurement
unitary, pair confirmation, and graph-state preparation with an ancilla.

The gate set is y-rotations (exp(-i*angle*Y)), hadamard, pauli-x,
multi-controlled-z, and controlled-hadamard; any gate may carry
(qubit, required_bit) controls. Circuits serialize to JSON and round-trip
exactly. Data qubits are numbered 1..n with qubit 1 the most significant
bit; when an ancilla is present it is qubit n+1, the least significant bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .statevector import HADAMARD, PAULI_X, PAULI_Z, Ket, apply_controlled, apply_single, basis_ket, ry
from .teststate import amplitudes

GATE_KINDS = ("ry", "h", "x", "mcz", "ch")


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}; expected one of {GATE_KINDS}")
        if (self.kind == "ry") != (self.angle is not None):
            raise ValueError("exactly the ry gates carry an angle")
        object.__setattr__(
            self, "controls", tuple((int(q), int(b)) for q, b in self.controls)
        )


@dataclass(frozen=True)
class Circuit:
    n: int
    ancilla: bool = False
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one data qubit, got {self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        width = self.width
        for g in self.gates:
            qubits = [g.target] + [q for q, _ in g.controls]
            for q in qubits:
                if not 1 <= q <= width:
                    raise ValueError(f"qubit {q} outside register of width {width}")
            if len(set(qubits)) != len(qubits):
                raise ValueError("target and control qubits must be distinct")
            for _, b in g.controls:
                if b not in (0, 1):
                    raise ValueError(f"control bit must be 0 or 1, got {b}")

    @property
    def width(self) -> int:
        return self.n + (1 if self.ancilla else 0)


_BASE = {"h": HADAMARD, "x": PAULI_X, "mcz": PAULI_Z, "ch": HADAMARD}


def simulate(circuit: Circuit, state: Ket | None = None) -> Ket:
    """Apply the circuit to the state (default |0...0>) and return the result."""
    if state is None:
        state = basis_ket(1 << circuit.width, 0)
    elif state.dim != 1 << circuit.width:
        raise ValueError(
            f"state dimension {state.dim} does not match a width-{circuit.width} register"
        )
    for g in circuit.gates:
        matrix = ry(g.angle) if g.kind == "ry" else _BASE[g.kind]
        if g.controls:
            state = apply_controlled(matrix, g.controls, g.target, state)
        else:
            state = apply_single(matrix, g.target, state)
    return state


def unitary(circuit: Circuit) -> np.ndarray:
    """The full matrix of the circuit, one simulated column per basis ket."""
    dim = 1 << circuit.width
    out = np.empty((dim, dim), dtype=np.complex128)
    for col in range(dim):
        out[:, col] = simulate(circuit, basis_ket(dim, col)).amps
    return out


def export(circuit: Circuit) -> dict:
    """JSON-ready description; floats survive a round trip exactly."""
    gates = []
    for g in circuit.gates:
        record: dict = {
            "kind": g.kind,
            "target": g.target,
            "controls": [[q, b] for q, b in g.controls],
        }
        if g.kind == "ry":
            record["angle"] = g.angle
        gates.append(record)
    return {"n": circuit.n, "ancilla": circuit.ancilla, "gates": gates}


def import_circuit(data: dict) -> Circuit:
    """Rebuild a Circuit from its exported form; unknown kinds are rejected."""
    try:
        n = int(data["n"])
        ancilla = bool(data["ancilla"])
        raw = data["gates"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit description: {exc}") from exc
    gates = []
    for record in raw:
        kind = record.get("kind")
        if kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {kind!r}; expected one of {GATE_KINDS}")
        gates.append(
            Gate(
                kind,
                int(record["target"]),
                tuple((int(q), int(b)) for q, b in record.get("controls", [])),
                float(record["angle"]) if kind == "ry" else None,
            )
        )
    return Circuit(n, ancilla, tuple(gates))


def _prep_gates(n: int, a: float, b: float) -> tuple[Gate, ...]:
    # stage 1 rotates qubit 1; stage i rotates qubit i behind all-zero
    # controls and then mixes it with an unconditional hadamard
    theta1 = math.atan2(2.0 ** ((n - 1) / 2.0) * b, math.sqrt(a * a + (2 ** (n - 1) - 1) * b * b))
    gates = [Gate("ry", 1, angle=theta1)]
    for i in range(2, n + 1):
        r = math.sqrt(a * a + (2 ** (n - i) - 1) * b * b)
        c = 2.0 ** ((n - i) / 2.0) * b
        controls = tuple((q, 0) for q in range(1, i))
        gates.append(Gate("ry", i, controls=controls, angle=math.atan2(r - c, r + c)))
        gates.append(Gate("h", i))
    return tuple(gates)


def compile_teststate_prep(n: int) -> Circuit:
    """Circuit preparing the full-space test state for guess 0 from |0...0>.

    One y-rotation on qubit 1, then per qubit a zero-controlled y-rotation
    followed by a hadamard: 2n-1 gates in total.
    """
    if n < 2:
        raise ValueError(f"test-state preparation needs at least 2 qubits, got {n}")
    amp = amplitudes(1 << n)
    return Circuit(n, gates=_prep_gates(n, amp.a, amp.b))


def localize_teststate(circuit: Circuit, j: int) -> Circuit:
    """Retarget a guess-0 preparation to guess j by appending pauli-x gates."""
    n = circuit.n
    if not 0 <= j < 1 << n:
        raise ValueError(f"guess {j} outside [0, {1 << n})")
    flips = tuple(Gate("x", q) for q in range(1, n + 1) if (j >> (n - q)) & 1)
    return Circuit(n, circuit.ancilla, circuit.gates + flips)


def compile_srm_unitary(n: int) -> Circuit:
    """Circuit for the measurement unitary that maps |T_0^l> to +-|l>.

    Conjugates the flip about |0...0> by the preparation circuit of the
    +1 eigenket (the guess-0 amplitudes with a -> sqrt((1-a)/2) and
    b -> b/sqrt(2(1-a))); the trailing ry(pi) realizes the overall minus
    sign as a real gate, keeping the export schema plain.
    """
    if n < 2:
        raise ValueError(f"the measurement unitary needs at least 2 qubits, got {n}")
    amp = amplitudes(1 << n)
    ap = math.sqrt((1.0 - amp.a) / 2.0)
    bp = amp.b / math.sqrt(2.0 * (1.0 - amp.a))
    prep = _prep_gates(n, ap, bp)
    undo = tuple(
        Gate(g.kind, g.target, g.controls, -g.angle if g.kind == "ry" else None)
        for g in reversed(prep)
    )
    flips = tuple(Gate("x", q) for q in range(1, n + 1))
    mcz = Gate("mcz", n, controls=tuple((q, 1) for q in range(1, n)))
    sign = Gate("ry", 1, angle=math.pi)
    return Circuit(n, gates=undo + flips + (mcz,) + flips + prep + (sign,))


def compile_pair_check(n: int, j: int, pivot: int = 1) -> Circuit:
    """One confirmation round for candidate j, paired across the pivot qubit.

    Pauli-x gates prepare j with the pivot bit cleared; the final two gates
    are hadamards on the pivot, and the black box belongs between them.
    After the round the pivot qubit reads 1 exactly when the oracle is j or
    j with the pivot bit flipped.
    """
    if n < 2:
        raise ValueError(f"pair confirmation needs at least 2 qubits, got {n}")
    if not 0 <= j < 1 << n:
        raise ValueError(f"candidate {j} outside [0, {1 << n})")
    if not 1 <= pivot <= n:
        raise ValueError(f"pivot qubit {pivot} outside register of {n} qubits")
    flips = tuple(
        Gate("x", q) for q in range(1, n + 1) if q != pivot and (j >> (n - q)) & 1
    )
    return Circuit(n, gates=flips + (Gate("h", pivot), Gate("h", pivot)))


def compile_graph_prep(n: int) -> Circuit:
    """Star-graph entangler: hadamard on the ancilla, then one
    controlled-hadamard bond from the ancilla to every data qubit."""
    if n < 2:
        raise ValueError(f"graph-state preparation needs at least 2 data qubits, got {n}")
    r = n + 1
    bonds = tuple(Gate("ch", q, controls=((r, 1),)) for q in range(1, n + 1))
    return Circuit(n, ancilla=True, gates=(Gate("h", r),) + bonds)


def ancilla_basis_angle(n: int) -> float:
    """Ancilla measurement angle: tan(theta/2) = sqrt(N/(N-4)), pi at N=4."""
    if n < 2:
        raise ValueError(f"need at least 2 data qubits, got {n}")
    N = 1 << n
    if N == 4:
        return math.pi
    return 2.0 * math.atan(math.sqrt(N / (N - 4)))


def complex_test_state(n: int) -> Ket:
    """The complex-amplitude guess-0 test state the graph recipe targets.

    a = (sqrt(N-4) - i)/sqrt(2N-4) on |0...0> and b = -i/sqrt(2N-4)
    elsewhere; |a| and |b| match the real test-state amplitudes.
    """
    if n < 2:
        raise ValueError(f"need at least 2 data qubits, got {n}")
    N = 1 << n
    amps = np.full(N, -1j / math.sqrt(2 * N - 4), dtype=np.complex128)
    amps[0] = (math.sqrt(N - 4) - 1j) / math.sqrt(2 * N - 4)
    return Ket(amps)


@lru_cache(maxsize=32)
def _graph_state(n: int) -> Ket:
    return simulate(compile_graph_prep(n))


def prepare_graph_test_state(n: int, rng: np.random.Generator) -> tuple[Ket, int]:
    """Prepare the complex test state by measuring the graph-state ancilla.

    Projects the ancilla (qubit n+1, the least significant bit) onto
    cos(theta/2)|0> + i sin(theta/2)|1> or its orthogonal partner, each
    seen with probability 1/2, then undoes the byproduct of the second
    outcome with a hadamard on every data qubit. Returns the n-qubit state
    and the ancilla outcome; both agree with complex_test_state(n) up to
    global phase.
    """
    psi = _graph_state(n)
    theta = ancilla_basis_angle(n)
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    even, odd = psi.amps[0::2], psi.amps[1::2]
    v_up = c * even - 1j * s * odd
    p_up = float(np.vdot(v_up, v_up).real)
    if rng.random() < p_up:
        out = Ket(v_up / math.sqrt(p_up))
        outcome = 0
    else:
        v_down = -s * even - 1j * c * odd
        out = Ket(v_down / math.sqrt(1.0 - p_up))
        outcome = 1
        for q in range(1, n + 1):
            out = apply_single(HADAMARD, q, out)
    return out, outcome
