"""Weighted directed graph view of a circuit, causal cones, and paths.

Nodes are wire segments (qubit, segment): segment 0 precedes the first gate
on that qubit and increments after every gate touching it. A single-qubit
gate contributes one zero-weight edge along its wire; a two-qubit gate
contributes four edges (two straight, two diagonal) weighted by the
modified mutual-information distance of the gate's current unitary. All
edges point forward in time.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .circuit import Circuit, execution_order, gate_angle
from .gates import gate_matrix, is_two_qubit
from .metric import distance_modified, embed_unitary


class GraphNode(NamedTuple):
    qubit: int
    segment: int

    def label(self) -> str:
        return f"q{self.qubit}s{self.segment}"


@dataclass(frozen=True)
class GraphEdge:
    source: GraphNode
    target: GraphNode
    gate_ref: int
    param_slot: int | None
    leg_pair: str  # "wire" for single-qubit edges, else "ac", "bd", "ad", "bc"
    weight: float


class MetricDisconnectedError(Exception):
    """No finite-weight path reaches the terminal from any initial node."""


@dataclass(frozen=True)
class Path:
    nodes: tuple[GraphNode, ...]
    gate_refs: tuple[int, ...]
    parameter_slots: tuple[int, ...]


@dataclass
class CircuitGraph:
    nodes: list[GraphNode]
    edges: list[GraphEdge]
    initial: dict[int, GraphNode]
    terminal: dict[int, GraphNode]

    def __post_init__(self) -> None:
        self._node_set = set(self.nodes)
        self._in_edges: dict[GraphNode, list[GraphEdge]] = {n: [] for n in self.nodes}
        self._out_edges: dict[GraphNode, list[GraphEdge]] = {n: [] for n in self.nodes}
        for edge in self.edges:
            self._in_edges[edge.target].append(edge)
            self._out_edges[edge.source].append(edge)
        for bucket in (self._in_edges, self._out_edges):
            for edge_list in bucket.values():
                edge_list.sort(key=lambda e: (e.source, e.target, e.leg_pair))

    def in_edges(self, node: GraphNode) -> list[GraphEdge]:
        return self._in_edges[node]

    def out_edges(self, node: GraphNode) -> list[GraphEdge]:
        return self._out_edges[node]

    def __contains__(self, node: GraphNode) -> bool:
        return node in self._node_set

    def parameter_slots(self) -> set[int]:
        return {e.param_slot for e in self.edges if e.param_slot is not None}


def build_graph(circuit: Circuit, params: Sequence[float] | np.ndarray) -> CircuitGraph:
    """Build the weighted graph of ``circuit`` at the given parameter values.

    Straight two-qubit edges (a,c)/(b,d) and both diagonals carry the
    modified distance of the gate's current unitary; single-qubit edges
    carry weight 0.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValueError(
            f"expected {circuit.n_params} parameters, got shape {params.shape}"
        )
    segments = [0] * circuit.n_qubits
    nodes = [GraphNode(q, 0) for q in range(circuit.n_qubits)]
    edges: list[GraphEdge] = []
    for i in execution_order(circuit):
        gate = circuit.gates[i]
        theta = gate_angle(gate, params)
        slot = gate.param_slot
        if is_two_qubit(gate.kind):
            q1, q2 = gate.qubits
            a = GraphNode(q1, segments[q1])
            b = GraphNode(q2, segments[q2])
            c = GraphNode(q1, segments[q1] + 1)
            d = GraphNode(q2, segments[q2] + 1)
            state = embed_unitary(gate_matrix(gate.kind, theta))
            for src, dst, pair in ((a, c, "ac"), (b, d, "bd"), (a, d, "ad"), (b, c, "bc")):
                weight = distance_modified(state, (pair[0], pair[1]))
                edges.append(GraphEdge(src, dst, i, slot, pair, weight))
            segments[q1] += 1
            segments[q2] += 1
            nodes.extend([c, d])
        else:
            (q,) = gate.qubits
            src = GraphNode(q, segments[q])
            dst = GraphNode(q, segments[q] + 1)
            edges.append(GraphEdge(src, dst, i, slot, "wire", 0.0))
            segments[q] += 1
            nodes.append(dst)
    initial = {q: GraphNode(q, 0) for q in range(circuit.n_qubits)}
    terminal = {q: GraphNode(q, segments[q]) for q in range(circuit.n_qubits)}
    return CircuitGraph(nodes, edges, initial, terminal)


def causal_cone(graph: CircuitGraph, measured_qubits: Iterable[int]) -> CircuitGraph:
    """Subgraph of nodes and edges from which some measured qubit's terminal
    node is reachable (reverse reachability), terminals included."""
    measured = sorted(set(measured_qubits))
    if not measured:
        raise ValueError("measured qubit set must be nonempty")
    for q in measured:
        if q not in graph.terminal:
            raise ValueError(f"qubit {q} not in graph")
    cone_nodes: set[GraphNode] = set()
    frontier = [graph.terminal[q] for q in measured]
    cone_nodes.update(frontier)
    while frontier:
        node = frontier.pop()
        for edge in graph.in_edges(node):
            if edge.source not in cone_nodes:
                cone_nodes.add(edge.source)
                frontier.append(edge.source)
    nodes = [n for n in graph.nodes if n in cone_nodes]
    edges = [e for e in graph.edges if e.target in cone_nodes]
    initial = {q: n for q, n in graph.initial.items() if n in cone_nodes}
    terminal = {q: n for q, n in graph.terminal.items() if n in cone_nodes}
    return CircuitGraph(nodes, edges, initial, terminal)


def _path_from_edges(nodes: list[GraphNode], edges: list[GraphEdge]) -> Path:
    slots: list[int] = []
    seen: set[int] = set()
    for edge in edges:
        if edge.param_slot is not None and edge.param_slot not in seen:
            seen.add(edge.param_slot)
            slots.append(edge.param_slot)
    return Path(tuple(nodes), tuple(e.gate_ref for e in edges), tuple(slots))


def sample_random_path(
    cone: CircuitGraph, terminal: GraphNode, rng: np.random.Generator
) -> Path:
    """Backward uniform random walk from ``terminal`` to an initial node,
    reversed into a forward path."""
    if terminal not in cone:
        raise ValueError(f"terminal {terminal} not in cone")
    node = terminal
    rev_nodes = [node]
    rev_edges: list[GraphEdge] = []
    while True:
        in_edges = cone.in_edges(node)
        if not in_edges:
            break
        edge = in_edges[int(rng.integers(len(in_edges)))]
        rev_edges.append(edge)
        node = edge.source
        rev_nodes.append(node)
    return _path_from_edges(rev_nodes[::-1], rev_edges[::-1])


def shortest_paths(cone: CircuitGraph, terminal: GraphNode) -> list[Path]:
    """Minimum-weight path from every initial node with finite connectivity
    to ``terminal``; +inf edges are treated as absent and ties break on the
    lexicographically smallest node sequence.

    Raises :class:`MetricDisconnectedError` when no initial node connects.
    """
    if terminal not in cone:
        raise ValueError(f"terminal {terminal} not in cone")
    # Dijkstra on reversed edges: distance from every node to the terminal.
    dist: dict[GraphNode, float] = {terminal: 0.0}
    heap: list[tuple[float, GraphNode]] = [(0.0, terminal)]
    settled: set[GraphNode] = set()
    while heap:
        d, node = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        for edge in cone.in_edges(node):
            if math.isinf(edge.weight):
                continue
            candidate = d + edge.weight
            if candidate < dist.get(edge.source, math.inf):
                dist[edge.source] = candidate
                heapq.heappush(heap, (candidate, edge.source))

    paths = []
    for _, start in sorted(cone.initial.items()):
        if start not in dist:
            continue
        nodes = [start]
        edges: list[GraphEdge] = []
        node = start
        while node != terminal:
            best: tuple[GraphNode, GraphEdge] | None = None
            for edge in cone.out_edges(node):
                if math.isinf(edge.weight) or edge.target not in dist:
                    continue
                if dist[node] == edge.weight + dist[edge.target]:
                    if best is None or edge.target < best[0]:
                        best = (edge.target, edge)
            assert best is not None, "inconsistent shortest-path table"
            node, edge = best
            nodes.append(node)
            edges.append(edge)
        paths.append(_path_from_edges(nodes, edges))
    if not paths:
        raise MetricDisconnectedError(
            f"no finite-weight path reaches {terminal} from any initial node"
        )
    return paths


def path_weight(cone: CircuitGraph, path: Path) -> float:
    """Total weight of a path's edges within ``cone``."""
    total = 0.0
    by_pair = {(e.source, e.target): e for e in cone.edges}
    for src, dst in zip(path.nodes, path.nodes[1:]):
        total += by_pair[(src, dst)].weight
    return total


def path_parameters(path: Path, circuit: Circuit) -> tuple[int, ...]:
    """Parameter slots of the gates the path traverses, in traversal order,
    deduplicated."""
    slots: list[int] = []
    seen: set[int] = set()
    for ref in path.gate_refs:
        slot = circuit.gates[ref].param_slot
        if slot is not None and slot not in seen:
            seen.add(slot)
            slots.append(slot)
    return tuple(slots)


def _format_weight(weight: float) -> str:
    if math.isinf(weight):
        return "+inf"
    return f"{weight:.6f}"


def to_dot(graph: CircuitGraph, name: str = "circuit") -> str:
    """DOT-format export with node labels q<qubit>s<segment> and edge
    weights as labels (+inf rendered literally)."""
    lines = [f"digraph {name} {{"]
    for node in sorted(graph.nodes):
        lines.append(f'  "{node.label()}";')
    for edge in sorted(graph.edges, key=lambda e: (e.source, e.target, e.leg_pair)):
        lines.append(
            f'  "{edge.source.label()}" -> "{edge.target.label()}" '
            f'[label="{_format_weight(edge.weight)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
