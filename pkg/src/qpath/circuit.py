"""Circuit representation, ansatz builders, and basis-state encoding.

A circuit is an ordered gate list with per-gate parameter slots and
as-soon-as-possible moments. Evaluation applies gates in (moment, list
order); since gates sharing a qubit have strictly increasing moments this
matches plain list order up to commuting reorderings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .gates import GateKind, gate_matrix, is_parameterized, is_two_qubit
from .statevector import StateVector, apply_unitary


@dataclass(frozen=True)
class GateInstance:
    kind: GateKind
    qubits: tuple[int, ...]
    param_slot: int | None
    moment: int

    def __post_init__(self) -> None:
        expected = 2 if is_two_qubit(self.kind) else 1
        if len(self.qubits) != expected:
            raise ValueError(
                f"{self.kind.value} expects {expected} qubit(s), got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.value} qubits must be distinct: {self.qubits}")
        if is_parameterized(self.kind) and self.param_slot is None:
            raise ValueError(f"{self.kind.value} requires a parameter slot")
        if not is_parameterized(self.kind) and self.param_slot is not None:
            raise ValueError(f"{self.kind.value} takes no parameter slot")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[GateInstance, ...]
    n_params: int

    def __post_init__(self) -> None:
        seen_slots: set[int] = set()
        avail = [0] * self.n_qubits
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"qubit {q} out of range for {self.n_qubits}")
            expected_moment = max(avail[q] for q in gate.qubits)
            if gate.moment != expected_moment:
                raise ValueError(
                    f"gate {gate} has moment {gate.moment}, ASAP scheduling "
                    f"gives {expected_moment}"
                )
            for q in gate.qubits:
                avail[q] = gate.moment + 1
            if gate.param_slot is not None:
                if not 0 <= gate.param_slot < self.n_params:
                    raise ValueError(f"parameter slot {gate.param_slot} out of range")
                seen_slots.add(gate.param_slot)
        if seen_slots != set(range(self.n_params)):
            unused = sorted(set(range(self.n_params)) - seen_slots)
            raise ValueError(f"unused parameter slots: {unused}")

    def gates_for_slot(self, slot: int) -> list[int]:
        return [i for i, g in enumerate(self.gates) if g.param_slot == slot]


class CircuitBuilder:
    """Accumulates gates, assigning ASAP moments and fresh parameter slots."""

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self._gates: list[GateInstance] = []
        self._avail = [0] * n_qubits
        self._n_params = 0

    def add(self, kind: GateKind, qubits: Sequence[int], parameterized: bool | None = None) -> int | None:
        qubits = tuple(qubits)
        slot = None
        if parameterized is None:
            parameterized = is_parameterized(kind)
        if parameterized:
            slot = self._n_params
            self._n_params += 1
        moment = max(self._avail[q] for q in qubits)
        self._gates.append(GateInstance(kind, qubits, slot, moment))
        for q in qubits:
            self._avail[q] = moment + 1
        return slot

    def build(self) -> Circuit:
        return Circuit(self.n_qubits, tuple(self._gates), self._n_params)


def gate_angle(
    gate: GateInstance,
    params: np.ndarray,
    angle_override: Mapping[int, float] | None = None,
    gate_index: int | None = None,
) -> float | None:
    if gate.param_slot is None:
        return None
    if angle_override is not None and gate_index in angle_override:
        return angle_override[gate_index]
    return float(params[gate.param_slot])


def execution_order(circuit: Circuit) -> list[int]:
    """Gate indices sorted by (moment, list position)."""
    return sorted(range(len(circuit.gates)), key=lambda i: (circuit.gates[i].moment, i))


def apply_gate(
    state: StateVector, gate: GateInstance, params: Sequence[float] | np.ndarray = ()
) -> StateVector:
    """Apply a single gate to a state; ``params`` resolves its angle."""
    theta = None
    if gate.param_slot is not None:
        params = np.asarray(params, dtype=float)
        if gate.param_slot >= params.size:
            raise ValueError(
                f"gate expects parameter slot {gate.param_slot}, "
                f"got {params.size} parameters"
            )
        theta = float(params[gate.param_slot])
    matrix = gate_matrix(gate.kind, theta)
    amps = apply_unitary(state.amplitudes, matrix, gate.qubits, state.n_qubits)
    return StateVector(state.n_qubits, amps)


def evaluate(
    circuit: Circuit,
    params: Sequence[float] | np.ndarray,
    initial: StateVector,
    *,
    angle_override: Mapping[int, float] | None = None,
) -> StateVector:
    """Apply the circuit's gates to ``initial`` and return the final state.

    ``angle_override`` maps gate index -> angle, used by the gradient
    machinery to shift a single gate occurrence without touching the shared
    parameter vector.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValueError(
            f"expected {circuit.n_params} parameters, got shape {params.shape}"
        )
    if initial.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"circuit on {circuit.n_qubits} qubits, state on {initial.n_qubits}"
        )
    amps = initial.amplitudes
    for i in execution_order(circuit):
        gate = circuit.gates[i]
        theta = gate_angle(gate, params, angle_override, i)
        matrix = gate_matrix(gate.kind, theta)
        amps = apply_unitary(amps, matrix, gate.qubits, circuit.n_qubits)
    return StateVector(circuit.n_qubits, amps)


def build_vqe_ansatz(n_qubits: int, layers: int) -> Circuit:
    """Hardware-style ansatz: per layer, Ry on every qubit followed by CRy
    entanglers in a brickwork pattern (0,1),(2,3),... then (1,2),(3,4),...

    Every gate gets a fresh parameter slot: layers * (2*n_qubits - 1) total.
    """
    if n_qubits < 2:
        raise ValueError("ansatz needs at least 2 qubits")
    if layers < 1:
        raise ValueError("layers must be >= 1")
    builder = CircuitBuilder(n_qubits)
    for _ in range(layers):
        for q in range(n_qubits):
            builder.add(GateKind.RY, (q,))
        for start in (0, 1):
            for q in range(start, n_qubits - 1, 2):
                builder.add(GateKind.CRY, (q, q + 1))
    return builder.build()


def build_vqc_ansatz(n_qubits: int, layers: int) -> Circuit:
    """Classifier ansatz: per layer, Ry then Rz on each qubit, then CRy on
    ring pairs (i, i+1 mod n). 3 * n_qubits parameters per layer.
    """
    if n_qubits < 2:
        raise ValueError("ansatz needs at least 2 qubits")
    if layers < 1:
        raise ValueError("layers must be >= 1")
    builder = CircuitBuilder(n_qubits)
    for _ in range(layers):
        for q in range(n_qubits):
            builder.add(GateKind.RY, (q,))
        for q in range(n_qubits):
            builder.add(GateKind.RZ, (q,))
        for q in range(n_qubits):
            builder.add(GateKind.CRY, (q, (q + 1) % n_qubits))
    return builder.build()


def encode_basis(bits: Sequence[int]) -> Circuit:
    """Circuit preparing |bits> from |0...0>: an X on every qubit set to 1."""
    bits = list(bits)
    if not bits:
        raise ValueError("bits must be nonempty")
    builder = CircuitBuilder(len(bits))
    for q, bit in enumerate(bits):
        if bit not in (0, 1):
            raise ValueError(f"bit {bit!r} at position {q} is not 0/1")
        if bit:
            builder.add(GateKind.X, (q,))
    return builder.build()


def concatenate(first: Circuit, second: Circuit) -> Circuit:
    """Compose two circuits on the same qubits; parameter slots come from
    ``second`` only (``first`` must be parameter-free)."""
    if first.n_qubits != second.n_qubits:
        raise ValueError("qubit count mismatch")
    if first.n_params != 0:
        raise ValueError("first circuit must be parameter-free")
    gates: list[GateInstance] = []
    avail = [0] * first.n_qubits
    for gate in list(first.gates) + list(second.gates):
        moment = max(avail[q] for q in gate.qubits)
        gates.append(GateInstance(gate.kind, gate.qubits, gate.param_slot, moment))
        for q in gate.qubits:
            avail[q] = moment + 1
    return Circuit(first.n_qubits, tuple(gates), second.n_params)


def format_dump(circuit: Circuit) -> str:
    """One gate per line: ``moment kind qubits slot`` with qubits
    comma-joined and '-' for slotless gates."""
    lines = []
    for gate in circuit.gates:
        slot = "-" if gate.param_slot is None else str(gate.param_slot)
        qubits = ",".join(str(q) for q in gate.qubits)
        lines.append(f"{gate.moment} {gate.kind.value} {qubits} {slot}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_dump(text: str, n_qubits: int | None = None) -> Circuit:
    """Inverse of :func:`format_dump`; qubit/parameter counts are inferred
    unless given."""
    gates = []
    max_qubit = -1
    slots: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'moment kind qubits slot'")
        moment_s, kind_s, qubits_s, slot_s = parts
        kind = GateKind(kind_s)
        qubits = tuple(int(q) for q in qubits_s.split(","))
        slot = None if slot_s == "-" else int(slot_s)
        gates.append(GateInstance(kind, qubits, slot, int(moment_s)))
        max_qubit = max(max_qubit, *qubits)
        if slot is not None:
            slots.add(slot)
    n = n_qubits if n_qubits is not None else max_qubit + 1
    n_params = max(slots) + 1 if slots else 0
    return Circuit(n, tuple(gates), n_params)
