"""Problem builders: XXZ-Heisenberg lattice Hamiltonians with an
exact-diagonalization oracle, and the n-bit parity classification task.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse.linalg

from .circuit import Circuit, encode_basis, evaluate
from .gradients import SHIFT_RULES, ShiftEvaluator
from .statevector import (
    Hamiltonian,
    PauliTerm,
    StateVector,
    apply_unitary,
    expectation,
    hamiltonian_matrix,
    pauli_matrix,
)

DENSE_DIAG_LIMIT = 10
MAX_DIAG_QUBITS = 14


@dataclass(frozen=True)
class LatticeSpec:
    """Rectangular spin lattice with 4-neighbor adjacency and open
    boundaries; site index = row * cols + col."""

    rows: int
    cols: int
    j_x: float
    j_y: float
    j_z: float
    field: float = 0.0

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("lattice must have positive dimensions")

    @property
    def n_qubits(self) -> int:
        return self.rows * self.cols

    @classmethod
    def xxz(cls, rows: int, cols: int, j: float = 1.0, delta: float = -20.0,
            field: float = 0.0) -> "LatticeSpec":
        return cls(rows, cols, j_x=j, j_y=j, j_z=delta, field=field)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for r in range(self.rows):
            for c in range(self.cols):
                site = r * self.cols + c
                if c + 1 < self.cols:
                    out.append((site, site + 1))
                if r + 1 < self.rows:
                    out.append((site, site + self.cols))
        return out


def build_xxz(spec: LatticeSpec) -> Hamiltonian:
    """H = sum_<i,j> (-J_X XX - J_Y YY - J_Z ZZ) - h sum_k Z_k."""
    terms = []
    for i, j in spec.edges():
        for coupling, pauli in ((spec.j_x, "X"), (spec.j_y, "Y"), (spec.j_z, "Z")):
            terms.append(PauliTerm.from_dict(-coupling, {i: pauli, j: pauli}))
    if spec.field != 0.0:
        for k in range(spec.n_qubits):
            terms.append(PauliTerm.from_dict(-spec.field, {k: "Z"}))
    return Hamiltonian(terms, spec.n_qubits)


def _matvec(ham: Hamiltonian, vec: np.ndarray) -> np.ndarray:
    out = np.zeros_like(vec, dtype=complex)
    for term in ham.terms:
        partial = vec.astype(complex)
        for q, p in term.operators:
            partial = apply_unitary(partial, pauli_matrix(p), (q,), ham.n_qubits)
        out += term.coefficient * partial
    return out


def exact_ground_energy(ham: Hamiltonian, method: str = "auto") -> float:
    """Smallest eigenvalue of the Hamiltonian.

    Dense diagonalization up to 10 qubits; a matrix-free Lanczos-type
    extremal eigensolver above that (up to 14 qubits).
    """
    n = ham.n_qubits
    if n > MAX_DIAG_QUBITS:
        raise ValueError(f"{n} qubits exceeds the {MAX_DIAG_QUBITS}-qubit limit")
    if method == "auto":
        method = "dense" if n <= DENSE_DIAG_LIMIT else "lanczos"
    if method == "dense":
        eigenvalues = np.linalg.eigvalsh(hamiltonian_matrix(ham))
        return float(eigenvalues[0])
    if method == "lanczos":
        dim = 2**n
        op = scipy.sparse.linalg.LinearOperator(
            (dim, dim), matvec=lambda v: _matvec(ham, v), dtype=complex
        )
        v0 = np.random.default_rng(0).standard_normal(dim)
        values = scipy.sparse.linalg.eigsh(
            op, k=1, which="SA", v0=v0, return_eigenvectors=False
        )
        return float(values[0].real)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ParityDataset:
    """All 2**n_bits binary vectors in lexicographic order; label 1 for odd
    popcount."""

    n_bits: int
    bits: np.ndarray  # (2**n, n) uint8
    labels: np.ndarray  # (2**n,) uint8

    def __len__(self) -> int:
        return self.bits.shape[0]


def parity_dataset(n_bits: int) -> ParityDataset:
    if not 1 <= n_bits <= 10:
        raise ValueError("n_bits must be in [1, 10]")
    count = 2**n_bits
    bits = np.zeros((count, n_bits), dtype=np.uint8)
    for i in range(count):
        for b in range(n_bits):
            bits[i, b] = (i >> (n_bits - 1 - b)) & 1
    labels = bits.sum(axis=1) % 2
    return ParityDataset(n_bits, bits, labels.astype(np.uint8))


def _readout_term(n_qubits: int) -> Hamiltonian:
    return Hamiltonian([PauliTerm.from_dict(1.0, {0: "Z"})], n_qubits)


def vqc_predict(circuit: Circuit, params: Sequence[float] | np.ndarray,
                bits: Sequence[int]) -> float:
    """<Z_0> after basis-encoding ``bits`` and applying the model circuit."""
    if len(bits) != circuit.n_qubits:
        raise ValueError(f"expected {circuit.n_qubits} bits, got {len(bits)}")
    state = evaluate(encode_basis(bits), [], StateVector.zero(circuit.n_qubits))
    state = evaluate(circuit, params, state)
    return expectation(state, _readout_term(circuit.n_qubits))


def mapped_labels(dataset: ParityDataset) -> np.ndarray:
    """Labels y in {0,1} mapped to targets m = 1 - 2y in {+1,-1}, matching
    the readout range so a perfect predictor zeroes the loss."""
    return 1.0 - 2.0 * dataset.labels.astype(float)


def vqc_predictions(circuit: Circuit, params: Sequence[float] | np.ndarray,
                    dataset: ParityDataset) -> np.ndarray:
    return np.array([vqc_predict(circuit, params, row) for row in dataset.bits])


def vqc_loss(circuit: Circuit, params: Sequence[float] | np.ndarray,
             dataset: ParityDataset) -> float:
    """Mean squared difference between mapped labels and predictions."""
    if len(dataset) == 0:
        raise ValueError("dataset must be nonempty")
    residual = mapped_labels(dataset) - vqc_predictions(circuit, params, dataset)
    return float(np.mean(residual**2))


def vqc_accuracy(circuit: Circuit, params: Sequence[float] | np.ndarray,
                 dataset: ParityDataset) -> float:
    """Fraction of samples whose prediction sign matches the mapped label;
    a prediction of exactly 0 counts as class 0."""
    predictions = vqc_predictions(circuit, params, dataset)
    predicted_class = (predictions < 0).astype(np.uint8)
    return float(np.mean(predicted_class == dataset.labels))


class VqcLossObjective:
    """Square-loss objective over the parity dataset for the optimizers.

    The gradient chains the loss derivative through per-sample
    parameter-shift derivatives of the readout expectation. All samples are
    evaluated in one batch: the gate kernels treat the trailing array axis
    as a batch dimension, and the basis-encoded inputs are just columns of
    an identity-like matrix.
    """

    def __init__(self, circuit: Circuit, dataset: ParityDataset):
        if circuit.n_qubits != dataset.n_bits:
            raise ValueError("circuit/dataset qubit count mismatch")
        self.circuit = circuit
        self.dataset = dataset
        self._targets = mapped_labels(dataset)
        self._readout = _readout_term(circuit.n_qubits)
        dim = 2**circuit.n_qubits
        batch = np.zeros((dim, len(dataset)), dtype=complex)
        for column, row in enumerate(dataset.bits):
            index = int("".join(str(b) for b in row), 2)
            batch[index, column] = 1.0
        self._initial_batch = batch
        # the loss is a sum of per-sample terms; every term reads out qubit 0,
        # so the path optimizer selects one path (and applies one update) per
        # training sample each epoch
        self.term_qubits: tuple[tuple[int, ...], ...] = ((0,),) * len(dataset)

    @staticmethod
    def _readout_values(states: np.ndarray) -> np.ndarray:
        """Per-column <Z_0> of a (2**n, ...) batch of states."""
        probabilities = np.abs(states) ** 2
        half = states.shape[0] // 2
        return probabilities[:half].sum(axis=0) - probabilities[half:].sum(axis=0)

    def _predictions(self, params: np.ndarray) -> np.ndarray:
        """Per-sample <Z_0> after the model circuit, batched over samples."""
        evaluator = ShiftEvaluator(self.circuit, np.asarray(params, float),
                                   self._initial_batch)
        return self._readout_values(evaluator.final_state())

    def value(self, params: np.ndarray) -> float:
        residual = self._targets - self._predictions(params)
        return float(np.mean(residual**2))

    def accuracy(self, params: np.ndarray) -> float:
        predicted_class = (self._predictions(params) < 0).astype(np.uint8)
        return float(np.mean(predicted_class == self.dataset.labels))

    def gradient(
        self,
        params: np.ndarray,
        slots: Sequence[int] | None = None,
        n_shots: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> np.ndarray:
        if n_shots is not None:
            raise ValueError("n-shot gradients are not supported for the VQC loss")
        params = np.asarray(params, dtype=float)
        slots = tuple(range(self.circuit.n_params)) if slots is None else tuple(slots)
        evaluator = ShiftEvaluator(self.circuit, params, self._initial_batch)
        predictions = self._readout_values(evaluator.final_state())
        weights = 2.0 * (predictions - self._targets) / len(self.dataset)
        out = np.zeros(len(slots))
        for k, slot in enumerate(slots):
            total = 0.0
            for gate_index in self.circuit.gates_for_slot(slot):
                rule = SHIFT_RULES[self.circuit.gates[gate_index].kind]
                shifts = [shift for shift, _ in rule.terms]
                finals = evaluator.shifted_finals(gate_index, shifts)
                shifted_preds = self._readout_values(finals)  # (K, batch)
                for variant, (_, coeff) in enumerate(rule.terms):
                    total += coeff * float(weights @ shifted_preds[variant])
            out[k] = total
        return out
