"""Shared independent oracles for the test suite.

These recompute quantities from first principles (dense matrices, explicit
index arithmetic) and deliberately avoid the library's fast paths.
"""

import numpy as np

from qpath.circuit import execution_order
from qpath.gates import gate_matrix


def permutation_matrix(n, perm):
    """Basis permutation sending qubit order ``range(n)`` to ``perm``."""
    matrix = np.zeros((2**n, 2**n))
    for idx in range(2**n):
        bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
        permuted = [bits[q] for q in perm]
        new = sum(b << (n - 1 - k) for k, b in enumerate(permuted))
        matrix[new, idx] = 1.0
    return matrix


def embed_gate_matrix(small, qubits, n):
    """Full 2^n matrix of a 1- or 2-qubit gate via kron and permutations."""
    if len(qubits) == 1:
        ops = {qubits[0]: small}
        full = np.array([[1.0]], dtype=complex)
        for q in range(n):
            full = np.kron(full, ops.get(q, np.eye(2)))
        return full
    q1, q2 = qubits
    perm = [q1, q2] + [q for q in range(n) if q not in (q1, q2)]
    p_matrix = permutation_matrix(n, perm)
    big = np.kron(small, np.eye(2 ** (n - 2)))
    return p_matrix.T @ big @ p_matrix


def dense_circuit_matrix(circuit, params):
    """Product of full gate matrices in execution order."""
    n = circuit.n_qubits
    total = np.eye(2**n, dtype=complex)
    for i in execution_order(circuit):
        gate = circuit.gates[i]
        theta = None if gate.param_slot is None else params[gate.param_slot]
        total = embed_gate_matrix(gate_matrix(gate.kind, theta), gate.qubits, n) @ total
    return total


def random_unitary4(rng):
    raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    q, _ = np.linalg.qr(raw)
    return q
