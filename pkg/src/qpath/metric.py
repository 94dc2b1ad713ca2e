"""Mutual-information distance metrics on two-qubit gates.

A two-qubit unitary U is embedded as a four-qubit pure state whose
amplitude on |a,b,c,d> is <c,d|U|a,b> divided by the Frobenius norm
(2 for any unitary). Legs a,b are the gate inputs on its two wires, c,d
the outputs; the state orders them as qubits (a,b,c,d) with a the most
significant bit.

Entropies are in nats. Two distance metrics over leg pairs:

  original:  -log(I(i:j) / (2 log 2))
  modified:  -log(I(i:j) / (4 log 2))      for straight pairs (a,c), (b,d)
             -log(I(ac:bd) / (4 log 2))    for diagonal pairs (a,d), (b,c)

Mutual information below 1e-12 maps to an infinite distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LEGS = ("a", "b", "c", "d")
_LEG_INDEX = {leg: i for i, leg in enumerate(LEGS)}

STRAIGHT_PAIRS = (("a", "c"), ("b", "d"))
DIAGONAL_PAIRS = (("a", "d"), ("b", "c"))

ZERO_MI_CUTOFF = 1e-12
_UNITARITY_TOL = 1e-8

TWO_LOG_2 = 2.0 * math.log(2.0)
FOUR_LOG_2 = 4.0 * math.log(2.0)


@dataclass(frozen=True)
class EmbeddedState:
    """Four-qubit pure state of an embedded two-qubit unitary."""

    amplitudes: np.ndarray  # (16,) over basis |a,b,c,d>
    normalization: float


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray
    subsystem: tuple[str, ...]

    def __post_init__(self) -> None:
        rho = self.entries
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {np.trace(rho)} != 1")


def embed_unitary(matrix: np.ndarray) -> EmbeddedState:
    """Embed a 4x4 unitary (standard convention, rows = output index) as a
    normalized four-qubit state."""
    u = np.asarray(matrix, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {u.shape}")
    deviation = np.max(np.abs(u.conj().T @ u - np.eye(4)))
    if deviation > _UNITARITY_TOL:
        raise ValueError(f"matrix is not unitary (deviation {deviation:.2e})")
    norm = float(np.linalg.norm(u))
    amps = np.zeros(16, dtype=complex)
    for ab in range(4):
        for cd in range(4):
            # basis index of |a,b,c,d> with a most significant
            amps[(ab << 2) | cd] = u[cd, ab] / norm
    return EmbeddedState(amps, norm)


def _resolve_legs(keep: tuple[str, ...] | str) -> tuple[str, ...]:
    legs = tuple(keep)
    if not legs:
        raise ValueError("subsystem must be nonempty")
    if len(set(legs)) != len(legs):
        raise ValueError(f"duplicate legs in {legs}")
    for leg in legs:
        if leg not in _LEG_INDEX:
            raise ValueError(f"unknown leg {leg!r}, expected one of {LEGS}")
    return legs


def reduce_state(state: EmbeddedState, keep: tuple[str, ...] | str) -> DensityMatrix:
    """Partial trace of |psi><psi| keeping one or two legs."""
    legs = _resolve_legs(keep)
    if len(legs) > 2:
        raise ValueError(f"can keep at most 2 legs, got {legs}")
    ordered = tuple(sorted(legs, key=_LEG_INDEX.get))
    keep_axes = [_LEG_INDEX[leg] for leg in ordered]
    out_axes = [i for i in range(4) if i not in keep_axes]
    tensor = state.amplitudes.reshape([2] * 4).transpose(keep_axes + out_axes)
    flat = tensor.reshape(2 ** len(keep_axes), -1)
    return DensityMatrix(flat @ flat.conj().T, ordered)


def entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy -sum(lambda log lambda) in nats; eigenvalues in
    [-1e-12, 0) are clamped to 0 and values below 1e-12 contribute nothing."""
    eigenvalues = np.linalg.eigvalsh(rho.entries)
    if eigenvalues.min() < -1e-12:
        raise ValueError(f"negative eigenvalue {eigenvalues.min():.2e}")
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    kept = eigenvalues[eigenvalues >= 1e-12]
    return float(-(kept * np.log(kept)).sum()) if kept.size else 0.0


def _subsystem_entropy(state: EmbeddedState, legs: tuple[str, ...]) -> float:
    if len(legs) == 4:
        return 0.0  # global state is pure
    if len(legs) > 2:
        # purity: S(subsystem) = S(complement), which has <= 2 legs
        legs = tuple(l for l in LEGS if l not in legs)
    return entropy(reduce_state(state, legs))


def mutual_information(
    state: EmbeddedState, a: tuple[str, ...] | str, b: tuple[str, ...] | str
) -> float:
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB), nonnegative by clamping
    float residue at zero."""
    legs_a = _resolve_legs(a)
    legs_b = _resolve_legs(b)
    if set(legs_a) & set(legs_b):
        raise ValueError(f"subsystems overlap: {legs_a} vs {legs_b}")
    value = (
        _subsystem_entropy(state, legs_a)
        + _subsystem_entropy(state, legs_b)
        - _subsystem_entropy(state, tuple(legs_a) + tuple(legs_b))
    )
    return max(value, 0.0)


def _normalize_pair(pair: tuple[str, str]) -> tuple[str, str]:
    i, j = _resolve_legs(tuple(pair))
    return tuple(sorted((i, j), key=_LEG_INDEX.get))  # type: ignore[return-value]


def distance_original(state: EmbeddedState, pair: tuple[str, str]) -> float:
    """-log(I(i:j) / (2 log 2)); +inf when the mutual information vanishes."""
    i, j = _normalize_pair(pair)
    info = mutual_information(state, i, j)
    if info < ZERO_MI_CUTOFF:
        return math.inf
    return -math.log(info / TWO_LOG_2)


def distance_modified(state: EmbeddedState, pair: tuple[str, str]) -> float:
    """Modified leg distance with 4 log 2 normalization.

    Straight pairs (a,c), (b,d) use their own mutual information; both
    diagonal pairs use the pair-vs-pair information I(ac:bd).
    """
    pair = _normalize_pair(pair)
    if pair in STRAIGHT_PAIRS:
        info = mutual_information(state, pair[0], pair[1])
    elif pair in DIAGONAL_PAIRS:
        info = mutual_information(state, ("a", "c"), ("b", "d"))
    else:
        raise ValueError(
            f"pair {pair} is neither straight {STRAIGHT_PAIRS} nor diagonal "
            f"{DIAGONAL_PAIRS}"
        )
    if info < ZERO_MI_CUTOFF:
        return math.inf
    return -math.log(info / FOUR_LOG_2)
