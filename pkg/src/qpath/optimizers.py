"""Path-based stochastic optimization plus SGD and Nesterov baselines.

One path-optimizer iteration: rebuild the graph weights from the current
parameters, select a path per objective term and measured qubit according
to the strategy, then walk the selected slot sets in order, computing the
full-objective gradient restricted to each set and applying the update
immediately (later paths see earlier updates). The objective is recorded
once per iteration, after all updates.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .circuit import Circuit, evaluate
from .gradients import gradient, gradient_nshot
from .graph import (
    MetricDisconnectedError,
    build_graph,
    causal_cone,
    sample_random_path,
    shortest_paths,
)
from .statevector import Hamiltonian, StateVector, expectation

logger = logging.getLogger(__name__)


class Strategy(enum.Enum):
    RANDOM_PATH = "random"
    SHORTEST_PATH = "shortest"
    COMBINED_PATHS = "combined"
    SGD = "sgd"
    NESTEROV = "nesterov"


PATH_STRATEGIES = frozenset(
    {Strategy.RANDOM_PATH, Strategy.SHORTEST_PATH, Strategy.COMBINED_PATHS}
)


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate: float
    max_iterations: int
    momentum: float = 0.9
    n_shots: int | None = None

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must be in [0, 1)")
        if self.n_shots is not None and self.n_shots < 1:
            raise ValueError("n_shots must be >= 1 when set")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    objective: float
    accuracy: float | None
    updates: int


@dataclass
class Trajectory:
    records: list[IterationRecord]
    final_params: np.ndarray
    fallback_count: int = 0

    @property
    def objectives(self) -> list[float]:
        return [r.objective for r in self.records]

    @property
    def accuracies(self) -> list[float | None]:
        return [r.accuracy for r in self.records]


class Objective(Protocol):
    """What the optimizers need from a problem: a value, restricted
    gradients, and the measured-qubit sets of its terms."""

    circuit: Circuit
    term_qubits: tuple[tuple[int, ...], ...]

    def value(self, params: np.ndarray) -> float: ...

    def gradient(
        self,
        params: np.ndarray,
        slots: Sequence[int] | None = None,
        n_shots: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> np.ndarray: ...


class EnergyObjective:
    """f(theta) = sum_j <H_j> for a Hamiltonian and ansatz, evaluated from
    the all-zeros state."""

    def __init__(self, circuit: Circuit, ham: Hamiltonian):
        if ham.n_qubits != circuit.n_qubits:
            raise ValueError("Hamiltonian/circuit qubit count mismatch")
        self.circuit = circuit
        self.ham = ham
        self.term_qubits = tuple(term.qubits for term in ham.terms)

    def value(self, params: np.ndarray) -> float:
        state = evaluate(self.circuit, params, StateVector.zero(self.circuit.n_qubits))
        return expectation(state, self.ham)

    def accuracy(self, params: np.ndarray) -> None:
        return None

    def gradient(
        self,
        params: np.ndarray,
        slots: Sequence[int] | None = None,
        n_shots: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> np.ndarray:
        if n_shots is None:
            return gradient(self.circuit, self.ham, params, slots)
        if rng is None:
            raise ValueError("n-shot gradients need an rng")
        return gradient_nshot(self.circuit, self.ham, params, slots, n_shots, rng)


def as_objective(problem: Objective | Hamiltonian, circuit: Circuit) -> Objective:
    if isinstance(problem, Hamiltonian):
        return EnergyObjective(circuit, problem)
    return problem


def _record(objective: Objective, params: np.ndarray, iteration: int,
            updates: int) -> IterationRecord:
    accuracy = getattr(objective, "accuracy", lambda p: None)(params)
    return IterationRecord(iteration, objective.value(params), accuracy, updates)


def _select_slot_sets(
    objective: Objective,
    params: np.ndarray,
    strategy: Strategy,
    rng: np.random.Generator,
) -> tuple[list[tuple[int, ...]], int]:
    """Per objective term, the ordered union of parameter slots along the
    selected paths. Returns (slot sets, fallback count)."""
    circuit = objective.circuit
    graph = build_graph(circuit, params)
    fallbacks = 0
    slot_sets: list[tuple[int, ...]] = []
    for term_qubits in objective.term_qubits:
        if strategy is Strategy.COMBINED_PATHS:
            measured = tuple(range(circuit.n_qubits))
        else:
            measured = term_qubits
        if not measured:
            slot_sets.append(())  # identity term: nothing to update
            continue
        cone = causal_cone(graph, measured)
        slots: list[int] = []
        seen: set[int] = set()
        for q in measured:
            terminal = cone.terminal[q]
            if strategy is Strategy.SHORTEST_PATH:
                try:
                    candidates = shortest_paths(cone, terminal)
                    path = candidates[int(rng.integers(len(candidates)))]
                except MetricDisconnectedError:
                    logger.debug(
                        "metric-disconnected cone at terminal %s, falling back "
                        "to a random path", terminal)
                    path = sample_random_path(cone, terminal, rng)
                    fallbacks += 1
            else:
                path = sample_random_path(cone, terminal, rng)
            for slot in path.parameter_slots:
                if slot not in seen:
                    seen.add(slot)
                    slots.append(slot)
        slot_sets.append(tuple(slots))
    return slot_sets, fallbacks


def path_optimize(
    circuit: Circuit,
    problem: Objective | Hamiltonian,
    init_params: Sequence[float] | np.ndarray,
    strategy: Strategy,
    config: OptimizerConfig,
    rng: np.random.Generator,
) -> Trajectory:
    """Stochastic path-based optimization (random, shortest, or combined
    path selection)."""
    if strategy not in PATH_STRATEGIES:
        raise ValueError(f"{strategy} is not a path strategy")
    objective = as_objective(problem, circuit)
    params = np.array(init_params, dtype=float)
    records = [_record(objective, params, 0, 0)]
    fallback_total = 0
    for iteration in range(1, config.max_iterations + 1):
        slot_sets, fallbacks = _select_slot_sets(objective, params, strategy, rng)
        fallback_total += fallbacks
        updates = 0
        for slots in slot_sets:
            if not slots:
                continue
            grad = objective.gradient(params, slots, config.n_shots, rng)
            params[list(slots)] -= config.learning_rate * grad
            updates += len(slots)
        records.append(_record(objective, params, iteration, updates))
    return Trajectory(records, params, fallback_total)


def sgd_optimize(
    circuit: Circuit,
    problem: Objective | Hamiltonian,
    init_params: Sequence[float] | np.ndarray,
    config: OptimizerConfig,
    rng: np.random.Generator,
) -> Trajectory:
    """Plain gradient descent on all slots, exact or n-shot gradients."""
    objective = as_objective(problem, circuit)
    params = np.array(init_params, dtype=float)
    all_slots = tuple(range(circuit.n_params))
    records = [_record(objective, params, 0, 0)]
    for iteration in range(1, config.max_iterations + 1):
        grad = objective.gradient(params, all_slots, config.n_shots, rng)
        params -= config.learning_rate * grad
        records.append(_record(objective, params, iteration, len(all_slots)))
    return Trajectory(records, params)


def nesterov_optimize(
    circuit: Circuit,
    problem: Objective | Hamiltonian,
    init_params: Sequence[float] | np.ndarray,
    config: OptimizerConfig,
    rng: np.random.Generator,
) -> Trajectory:
    """Nesterov accelerated gradient: evaluate the gradient at the
    lookahead point theta + mu*v, then v <- mu*v - alpha*g, theta <- theta + v."""
    objective = as_objective(problem, circuit)
    params = np.array(init_params, dtype=float)
    velocity = np.zeros_like(params)
    all_slots = tuple(range(circuit.n_params))
    records = [_record(objective, params, 0, 0)]
    for iteration in range(1, config.max_iterations + 1):
        lookahead = params + config.momentum * velocity
        grad = objective.gradient(lookahead, all_slots, config.n_shots, rng)
        velocity = config.momentum * velocity - config.learning_rate * grad
        params = params + velocity
        records.append(_record(objective, params, iteration, len(all_slots)))
    return Trajectory(records, params)
