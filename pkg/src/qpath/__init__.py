"""Information-flow metrics and path-based optimization for parameterized
quantum circuits."""

__version__ = "0.1.0"

from .circuit import (
    Circuit,
    GateInstance,
    apply_gate,
    build_vqc_ansatz,
    build_vqe_ansatz,
    encode_basis,
    evaluate,
)
from .gates import GateKind
from .graph import (
    CircuitGraph,
    GraphEdge,
    GraphNode,
    MetricDisconnectedError,
    Path,
    build_graph,
    causal_cone,
    path_parameters,
    sample_random_path,
    shortest_paths,
    to_dot,
)
from .metric import (
    DensityMatrix,
    EmbeddedState,
    distance_modified,
    distance_original,
    embed_unitary,
    entropy,
    mutual_information,
    reduce_state,
)
from .optimizers import (
    EnergyObjective,
    OptimizerConfig,
    Strategy,
    Trajectory,
    nesterov_optimize,
    path_optimize,
    sgd_optimize,
)
from .problems import (
    LatticeSpec,
    ParityDataset,
    VqcLossObjective,
    build_xxz,
    exact_ground_energy,
    parity_dataset,
    vqc_accuracy,
    vqc_loss,
    vqc_predict,
)
from .statevector import (
    Hamiltonian,
    PauliTerm,
    StateVector,
    expectation,
    sample_expectation,
)

__all__ = [
    "Circuit",
    "CircuitGraph",
    "DensityMatrix",
    "EmbeddedState",
    "EnergyObjective",
    "GateInstance",
    "GateKind",
    "GraphEdge",
    "GraphNode",
    "Hamiltonian",
    "LatticeSpec",
    "MetricDisconnectedError",
    "OptimizerConfig",
    "ParityDataset",
    "Path",
    "PauliTerm",
    "StateVector",
    "Strategy",
    "Trajectory",
    "VqcLossObjective",
    "apply_gate",
    "build_graph",
    "build_vqc_ansatz",
    "build_vqe_ansatz",
    "build_xxz",
    "causal_cone",
    "distance_modified",
    "distance_original",
    "embed_unitary",
    "encode_basis",
    "entropy",
    "evaluate",
    "exact_ground_energy",
    "expectation",
    "mutual_information",
    "nesterov_optimize",
    "parity_dataset",
    "path_optimize",
    "path_parameters",
    "reduce_state",
    "sample_expectation",
    "sample_random_path",
    "sgd_optimize",
    "shortest_paths",
    "to_dot",
    "vqc_accuracy",
    "vqc_loss",
    "vqc_predict",
]
