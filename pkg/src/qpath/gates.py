"""Gate kinds and their unitary matrices.

Rotation convention: R_P(theta) = exp(-i * theta * P / 2). Controlled
rotations apply R_P(theta) on the target when the control is |1>.

Two-qubit matrices are written in the basis |q1 q2> where q1 is the first
qubit listed on the gate (the control for controlled kinds) and is the more
significant bit of the 2-bit index.
"""

from __future__ import annotations

import enum
import math

import numpy as np


class GateKind(enum.Enum):
    X = "x"
    H = "h"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    CNOT = "cnot"
    CRY = "cry"
    CRZ = "crz"


TWO_QUBIT_KINDS = frozenset({GateKind.CNOT, GateKind.CRY, GateKind.CRZ})
PARAMETERIZED_KINDS = frozenset(
    {GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CRY, GateKind.CRZ}
)

_SQRT2 = math.sqrt(2.0)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    phase = np.exp(-0.5j * theta)
    return np.array([[phase, 0], [0, phase.conjugate()]], dtype=complex)


def _controlled(block: np.ndarray) -> np.ndarray:
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = block
    return out


def gate_matrix(kind: GateKind, theta: float | None = None) -> np.ndarray:
    """Return the dense unitary for a gate kind (2x2 or 4x4).

    ``theta`` is required for parameterized kinds and rejected otherwise.
    """
    if kind in PARAMETERIZED_KINDS:
        if theta is None:
            raise ValueError(f"gate kind {kind.value} requires a parameter")
    elif theta is not None:
        raise ValueError(f"gate kind {kind.value} takes no parameter")

    if kind is GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind is GateKind.H:
        return np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2
    if kind is GateKind.RX:
        return _rx(theta)
    if kind is GateKind.RY:
        return _ry(theta)
    if kind is GateKind.RZ:
        return _rz(theta)
    if kind is GateKind.CNOT:
        return _controlled(np.array([[0, 1], [1, 0]], dtype=complex))
    if kind is GateKind.CRY:
        return _controlled(_ry(theta))
    if kind is GateKind.CRZ:
        return _controlled(_rz(theta))
    raise ValueError(f"unknown gate kind: {kind!r}")


def is_two_qubit(kind: GateKind) -> bool:
    return kind in TWO_QUBIT_KINDS


def is_parameterized(kind: GateKind) -> bool:
    return kind in PARAMETERIZED_KINDS
