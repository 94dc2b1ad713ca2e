"""Dense complex statevector simulation with Pauli-string expectations.

Bit-ordering convention: qubit 0 is the most significant bit of the basis
state index, so for 3 qubits the state |q0 q1 q2> = |110> sits at index 6.
All operations are pure: they return new arrays and never mutate inputs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

PAULI_LABELS = ("X", "Y", "Z")


@dataclass(frozen=True)
class StateVector:
    """Normalized state of ``n_qubits`` qubits, 2**n_qubits amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: np.ndarray) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(round(np.log2(amps.size)))
        if 2**n != amps.size:
            raise ValueError(f"amplitude count {amps.size} is not a power of 2")
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class PauliTerm:
    """A weighted Pauli string: coefficient * prod_i P_i on qubit i.

    ``operators`` maps qubit index to one of "X", "Y", "Z"; an empty map is
    the identity term.
    """

    coefficient: float
    operators: tuple[tuple[int, str], ...]

    @classmethod
    def from_dict(cls, coefficient: float, operators: dict[int, str]) -> "PauliTerm":
        for q, p in operators.items():
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if p not in PAULI_LABELS:
                raise ValueError(f"unknown Pauli label {p!r} on qubit {q}")
        ordered = tuple(sorted(operators.items()))
        return cls(float(coefficient), ordered)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.operators)

    def validate(self, n_qubits: int) -> None:
        for q, _ in self.operators:
            if not 0 <= q < n_qubits:
                raise ValueError(f"qubit index {q} out of range for {n_qubits} qubits")


@dataclass
class Hamiltonian:
    """Sum of Pauli terms acting on ``n_qubits`` qubits."""

    terms: list[PauliTerm]
    n_qubits: int

    def __post_init__(self) -> None:
        for term in self.terms:
            term.validate(self.n_qubits)

    def __iter__(self):
        return iter(self.terms)


def apply_unitary(
    amplitudes: np.ndarray, matrix: np.ndarray, qubits: tuple[int, ...], n_qubits: int
) -> np.ndarray:
    """Apply a k-qubit unitary (2**k x 2**k) on the given qubit axes."""
    k = len(qubits)
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit index {q} out of range for {n_qubits} qubits")
    if len(set(qubits)) != k:
        raise ValueError(f"duplicate qubit indices in {qubits}")
    if k == 1:
        return _apply_1q(amplitudes, matrix, qubits[0], n_qubits)
    if k == 2:
        return _apply_2q(amplitudes, matrix, qubits, n_qubits)
    tensor = amplitudes.reshape([2] * n_qubits)
    gate = matrix.reshape([2] * (2 * k))
    out = np.tensordot(gate, tensor, axes=(list(range(k, 2 * k)), list(qubits)))
    out = np.moveaxis(out, list(range(k)), list(qubits))
    return np.ascontiguousarray(out).reshape(-1)


def _apply_1q(amplitudes: np.ndarray, g: np.ndarray, qubit: int, n: int) -> np.ndarray:
    tensor = amplitudes.reshape(1 << qubit, 2, -1)
    row0, row1 = tensor[:, 0], tensor[:, 1]
    out = np.empty_like(tensor)
    out[:, 0] = g[0, 0] * row0 + g[0, 1] * row1
    out[:, 1] = g[1, 0] * row0 + g[1, 1] * row1
    return out.reshape(-1)


def _apply_2q(
    amplitudes: np.ndarray, g: np.ndarray, qubits: tuple[int, ...], n: int
) -> np.ndarray:
    q1, q2 = qubits
    if q1 > q2:
        # reorder the gate basis |q1 q2> -> |q2 q1| by swapping middle bits
        perm = (0, 2, 1, 3)
        g = g[np.ix_(perm, perm)]
        q1, q2 = q2, q1
    tensor = amplitudes.reshape(1 << q1, 2, 1 << (q2 - q1 - 1), 2, -1)
    blocks = (tensor[:, 0, :, 0], tensor[:, 0, :, 1], tensor[:, 1, :, 0],
              tensor[:, 1, :, 1])
    out = np.empty_like(tensor)
    for row in range(4):
        acc = None
        for col in range(4):
            coeff = g[row, col]
            if coeff == 0.0:
                continue
            piece = coeff * blocks[col]
            acc = piece if acc is None else acc + piece
        if acc is None:
            acc = np.zeros_like(blocks[0])
        out[:, row >> 1, :, row & 1] = acc
    return out.reshape(-1)


@functools.lru_cache(maxsize=4096)
def _pauli_flip_and_phase(
    operators: tuple[tuple[int, str], ...], n_qubits: int
) -> tuple[np.ndarray, np.ndarray]:
    """Decompose a Pauli string as P|b> = phase(b) * |b ^ flip_mask>,
    returning (flipped index array, phase vector)."""
    dim = 2**n_qubits
    flip_mask = 0
    phase = np.ones(dim, dtype=complex)
    indices = np.arange(dim)
    for q, p in operators:
        bit = (indices >> (n_qubits - 1 - q)) & 1
        if p == "X":
            flip_mask |= 1 << (n_qubits - 1 - q)
        elif p == "Y":
            flip_mask |= 1 << (n_qubits - 1 - q)
            phase = phase * (1j * (1 - 2 * bit))
        else:  # Z
            phase = phase * (1 - 2 * bit)
    return indices ^ flip_mask, phase


def term_expectation(state: StateVector, term: PauliTerm) -> float:
    """<psi| c * P |psi> for a single weighted Pauli string."""
    term.validate(state.n_qubits)
    flipped_index, phase = _pauli_flip_and_phase(term.operators, state.n_qubits)
    psi = state.amplitudes
    # <psi|P|psi> = sum_b conj(psi[b ^ flip]) * phase(b) * psi[b]; Hermitian P
    # makes the value real, tiny imaginary residue is discarded.
    value = np.sum(np.conj(psi[flipped_index]) * phase * psi)
    return term.coefficient * float(value.real)


def _compiled(ham: Hamiltonian) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stacked (index, phase, coefficient) arrays for all terms, cached on
    the Hamiltonian instance."""
    cache = getattr(ham, "_compiled_cache", None)
    if cache is None:
        indices = np.empty((len(ham.terms), 2**ham.n_qubits), dtype=np.intp)
        phases = np.empty((len(ham.terms), 2**ham.n_qubits), dtype=complex)
        coeffs = np.array([t.coefficient for t in ham.terms])
        for row, term in enumerate(ham.terms):
            indices[row], phases[row] = _pauli_flip_and_phase(
                term.operators, ham.n_qubits
            )
        cache = (indices, phases, coeffs)
        ham._compiled_cache = cache
    return cache


def expectation(state: StateVector, ham: Hamiltonian) -> float:
    """Sum of term expectations of ``ham`` in ``state``."""
    if ham.n_qubits != state.n_qubits:
        raise ValueError(
            f"Hamiltonian on {ham.n_qubits} qubits, state on {state.n_qubits}"
        )
    if not ham.terms:
        return 0.0
    indices, phases, coeffs = _compiled(ham)
    psi = state.amplitudes
    values = np.einsum("md,md,d->m", np.conj(psi[indices]), phases, psi)
    return float(coeffs @ values.real)


def sample_expectation(
    state: StateVector, term: PauliTerm, n_shots: int, rng: np.random.Generator
) -> float:
    """Unbiased n-shot estimate of a single term expectation.

    Measuring the Pauli string P yields +/-1 with success probability
    p = (1 + <P>) / 2; the estimate is coefficient * (2k/n - 1) for k
    successes out of n shots.
    """
    if n_shots < 1:
        raise ValueError("n_shots must be >= 1")
    if term.coefficient == 0.0:
        return 0.0
    raw = term_expectation(state, term) / term.coefficient
    p = min(1.0, max(0.0, (1.0 + raw) / 2.0))
    successes = int(rng.binomial(n_shots, p))
    return term.coefficient * (2.0 * successes / n_shots - 1.0)


def pauli_matrix(label: str) -> np.ndarray:
    if label == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if label == "Y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if label == "Z":
        return np.array([[1, 0], [0, -1]], dtype=complex)
    raise ValueError(f"unknown Pauli label {label!r}")


def term_matrix(term: PauliTerm, n_qubits: int) -> np.ndarray:
    """Dense 2**n x 2**n matrix of a weighted Pauli string (test-sized n)."""
    term.validate(n_qubits)
    ops = dict(term.operators)
    out = np.array([[term.coefficient]], dtype=complex)
    for q in range(n_qubits):
        factor = pauli_matrix(ops[q]) if q in ops else np.eye(2, dtype=complex)
        out = np.kron(out, factor)
    return out


def hamiltonian_matrix(ham: Hamiltonian) -> np.ndarray:
    """Dense matrix of the full Hamiltonian (test-sized n)."""
    dim = 2**ham.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for term in ham.terms:
        out += term_matrix(term, ham.n_qubits)
    return out
