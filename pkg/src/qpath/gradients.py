"""Analytic parameter-shift gradients and a finite-difference oracle.

Single-qubit rotations use the 2-term rule (shifts +-pi/2, coefficients
+-1/2). Controlled rotations have generator eigenvalues {0, +-1/2} and use
the 4-term rule with shifts +-pi/2, +-3pi/2. Shifts are applied per gate
occurrence, so slots shared by several gates differentiate correctly via
the product rule.

Shifted evaluations reuse the unshifted prefix of the circuit: states up to
each gate are computed once per gradient call, and the K shift variants of
a gate run through the remaining gates as one batch (the gate kernels
treat the trailing array axis as a batch dimension).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, evaluate, execution_order, gate_angle
from .gates import GateKind, gate_matrix
from .statevector import (
    Hamiltonian,
    StateVector,
    apply_unitary,
    expectation,
    sample_expectation,
)

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ShiftRule:
    kind: GateKind
    terms: tuple[tuple[float, float], ...]  # (shift, coefficient) pairs


_TWO_TERM = ((math.pi / 2, 0.5), (-math.pi / 2, -0.5))
_FOUR_TERM = (
    (math.pi / 2, (_SQRT2 + 1) / (4 * _SQRT2)),
    (-math.pi / 2, -(_SQRT2 + 1) / (4 * _SQRT2)),
    (3 * math.pi / 2, -(_SQRT2 - 1) / (4 * _SQRT2)),
    (-3 * math.pi / 2, (_SQRT2 - 1) / (4 * _SQRT2)),
)

SHIFT_RULES: dict[GateKind, ShiftRule] = {
    GateKind.RX: ShiftRule(GateKind.RX, _TWO_TERM),
    GateKind.RY: ShiftRule(GateKind.RY, _TWO_TERM),
    GateKind.RZ: ShiftRule(GateKind.RZ, _TWO_TERM),
    GateKind.CRY: ShiftRule(GateKind.CRY, _FOUR_TERM),
    GateKind.CRZ: ShiftRule(GateKind.CRZ, _FOUR_TERM),
}


def _objective(
    circuit: Circuit,
    ham: Hamiltonian,
    params: np.ndarray,
    angle_override: dict[int, float] | None = None,
) -> float:
    state = evaluate(circuit, params, StateVector.zero(circuit.n_qubits),
                     angle_override=angle_override)
    return expectation(state, ham)


def _objective_nshot(
    circuit: Circuit,
    ham: Hamiltonian,
    params: np.ndarray,
    n_shots: int,
    rng: np.random.Generator,
    angle_override: dict[int, float] | None = None,
) -> float:
    state = evaluate(circuit, params, StateVector.zero(circuit.n_qubits),
                     angle_override=angle_override)
    return sum(sample_expectation(state, term, n_shots, rng) for term in ham.terms)


def _slot_gates(circuit: Circuit, slot: int) -> list[int]:
    gates = circuit.gates_for_slot(slot)
    if not gates:
        raise ValueError(f"slot {slot} not used by any gate")
    for i in gates:
        kind = circuit.gates[i].kind
        if kind not in SHIFT_RULES:
            raise ValueError(f"no shift rule registered for gate kind {kind.value}")
    return gates


class ShiftEvaluator:
    """Evaluates all parameter-shift variants of a circuit efficiently.

    ``batch_init`` is a (2**n, batch) complex array of initial columns; the
    plain single-state case is batch = 1.
    """

    def __init__(self, circuit: Circuit, params: np.ndarray, batch_init: np.ndarray):
        self.circuit = circuit
        self.params = params
        self.n_qubits = circuit.n_qubits
        self.batch = batch_init.shape[1]
        self.order = execution_order(circuit)
        self.position = {gate_index: p for p, gate_index in enumerate(self.order)}
        # prefix[p]: flattened batch state before applying the gate at
        # position p; prefix[len(order)] is the final state
        self.prefix = [batch_init.reshape(-1)]
        state = self.prefix[0]
        for gate_index in self.order:
            gate = circuit.gates[gate_index]
            theta = gate_angle(gate, params)
            state = apply_unitary(state, gate_matrix(gate.kind, theta),
                                  gate.qubits, self.n_qubits)
            self.prefix.append(state)

    def final_state(self) -> np.ndarray:
        return self.prefix[-1].reshape(-1, self.batch)

    def shifted_finals(self, gate_index: int, shifts: Sequence[float]) -> np.ndarray:
        """Final states with the one gate's angle shifted by each value.

        Returns an array of shape (2**n, len(shifts), batch): the shift
        variants ride through the circuit suffix as extra batch columns.
        """
        gate = self.circuit.gates[gate_index]
        base = gate_angle(gate, self.params)
        p = self.position[gate_index]
        variants = [
            apply_unitary(
                self.prefix[p], gate_matrix(gate.kind, base + shift),
                gate.qubits, self.n_qubits,
            ).reshape(-1, self.batch)
            for shift in shifts
        ]
        stacked = np.stack(variants, axis=1)  # (dim, K, batch)
        flat = np.ascontiguousarray(stacked).reshape(-1)
        for later in self.order[p + 1:]:
            later_gate = self.circuit.gates[later]
            theta = gate_angle(later_gate, self.params)
            flat = apply_unitary(flat, gate_matrix(later_gate.kind, theta),
                                 later_gate.qubits, self.n_qubits)
        return flat.reshape(-1, len(shifts), self.batch)


def gradient(
    circuit: Circuit,
    ham: Hamiltonian,
    params: Sequence[float] | np.ndarray,
    slots: Sequence[int] | None = None,
) -> np.ndarray:
    """Exact partial derivatives of sum_j <H_j> w.r.t. the given slots
    (all slots when omitted), via shifted-circuit evaluations."""
    params = np.asarray(params, dtype=float)
    slots = tuple(range(circuit.n_params)) if slots is None else tuple(slots)
    for slot in slots:
        _slot_gates(circuit, slot)
    initial = StateVector.zero(circuit.n_qubits).amplitudes.reshape(-1, 1)
    evaluator = ShiftEvaluator(circuit, params, initial)
    out = np.zeros(len(slots))
    for k, slot in enumerate(slots):
        total = 0.0
        for gate_index in circuit.gates_for_slot(slot):
            rule = SHIFT_RULES[circuit.gates[gate_index].kind]
            shifts = [shift for shift, _ in rule.terms]
            finals = evaluator.shifted_finals(gate_index, shifts)
            for variant, (_, coeff) in enumerate(rule.terms):
                state = StateVector(circuit.n_qubits, finals[:, variant, 0])
                total += coeff * expectation(state, ham)
        out[k] = total
    return out


def gradient_nshot(
    circuit: Circuit,
    ham: Hamiltonian,
    params: Sequence[float] | np.ndarray,
    slots: Sequence[int] | None,
    n_shots: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Parameter-shift gradient with every shifted expectation replaced by a
    fresh n-shot estimate."""
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    params = np.asarray(params, dtype=float)
    slots = tuple(range(circuit.n_params)) if slots is None else tuple(slots)
    out = np.zeros(len(slots))
    for k, slot in enumerate(slots):
        total = 0.0
        for gate_index in _slot_gates(circuit, slot):
            rule = SHIFT_RULES[circuit.gates[gate_index].kind]
            base = float(params[slot])
            for shift, coeff in rule.terms:
                total += coeff * _objective_nshot(
                    circuit, ham, params, n_shots, rng, {gate_index: base + shift}
                )
        out[k] = total
    return out


def finite_difference(
    circuit: Circuit,
    ham: Hamiltonian,
    params: Sequence[float] | np.ndarray,
    slot: int,
    step: float = 1e-5,
) -> float:
    """Central finite difference of sum_j <H_j> in one slot."""
    if step <= 0:
        raise ValueError("step must be positive")
    params = np.asarray(params, dtype=float)
    forward = params.copy()
    forward[slot] += step
    backward = params.copy()
    backward[slot] -= step
    return (_objective(circuit, ham, forward) - _objective(circuit, ham, backward)) / (
        2 * step
    )
