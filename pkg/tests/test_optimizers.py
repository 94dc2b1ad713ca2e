"""Path optimizer, SGD, and Nesterov baselines."""

import numpy as np
import pytest

import qpath.optimizers as optimizers
from qpath.circuit import CircuitBuilder, build_vqe_ansatz
from qpath.gates import GateKind
from qpath.gradients import gradient
from qpath.optimizers import (
    EnergyObjective,
    MetricDisconnectedError,
    OptimizerConfig,
    Strategy,
    nesterov_optimize,
    path_optimize,
    sgd_optimize,
)
from qpath.statevector import Hamiltonian, PauliTerm


def ry_on_first_of_two():
    builder = CircuitBuilder(2)
    builder.add(GateKind.RY, (0,))
    return builder.build()


def z_term(n, qubit=0):
    return Hamiltonian([PauliTerm.from_dict(1.0, {qubit: "Z"})], n)


class TestPathOptimize:
    @pytest.mark.parametrize("strategy", [
        Strategy.RANDOM_PATH, Strategy.SHORTEST_PATH, Strategy.COMBINED_PATHS,
    ])
    def test_converges_on_cosine_landscape(self, strategy):
        # f(theta) = cos(theta); descent from 1.0 at lr 0.1 reaches -1
        circuit = ry_on_first_of_two()
        config = OptimizerConfig(learning_rate=0.1, max_iterations=200)
        rng = np.random.default_rng(0)
        trajectory = path_optimize(circuit, z_term(2), [1.0], strategy, config, rng)
        assert trajectory.objectives[-1] == pytest.approx(-1.0, abs=1e-3)

    def test_empty_cone_means_constant_trajectory(self):
        # observable on qubit 0, the only gate acts on qubit 1
        builder = CircuitBuilder(2)
        builder.add(GateKind.RY, (1,))
        circuit = builder.build()
        config = OptimizerConfig(learning_rate=0.1, max_iterations=10)
        rng = np.random.default_rng(1)
        trajectory = path_optimize(
            circuit, z_term(2, qubit=0), [0.8], Strategy.RANDOM_PATH, config, rng
        )
        assert all(r.updates == 0 for r in trajectory.records)
        assert len(set(trajectory.objectives)) == 1
        np.testing.assert_allclose(trajectory.final_params, [0.8])

    def test_trajectory_length(self):
        circuit = ry_on_first_of_two()
        config = OptimizerConfig(learning_rate=0.1, max_iterations=7)
        rng = np.random.default_rng(2)
        trajectory = path_optimize(
            circuit, z_term(2), [0.3], Strategy.RANDOM_PATH, config, rng
        )
        assert len(trajectory.records) == 8  # initial point + 7 iterations

    def test_determinism(self):
        circuit = build_vqe_ansatz(4, 1)
        ham = z_term(4, qubit=2)
        config = OptimizerConfig(learning_rate=0.1, max_iterations=5)
        init = np.linspace(0.1, 2.0, circuit.n_params)
        runs = [
            path_optimize(circuit, ham, init, Strategy.SHORTEST_PATH, config,
                          np.random.default_rng(99))
            for _ in range(2)
        ]
        assert runs[0].objectives == runs[1].objectives
        np.testing.assert_array_equal(runs[0].final_params, runs[1].final_params)

    def test_update_locality(self):
        # parameters outside the selected paths never move within an iteration
        circuit = build_vqe_ansatz(6, 1)
        ham = z_term(6, qubit=0)
        config = OptimizerConfig(learning_rate=0.1, max_iterations=1)
        rng = np.random.default_rng(3)
        init = np.linspace(0.2, 2.2, circuit.n_params)
        trajectory = path_optimize(circuit, ham, init, Strategy.RANDOM_PATH, config, rng)
        moved = {
            slot for slot in range(circuit.n_params)
            if trajectory.final_params[slot] != init[slot]
        }
        # the qubit-0 cone in one brickwork layer touches at most slots on
        # qubits 0..1 plus the first entangler; everything else must be frozen
        from qpath.graph import build_graph, causal_cone
        cone = causal_cone(build_graph(circuit, init), [0])
        assert moved <= cone.parameter_slots()

    def test_update_rule_exact(self):
        # single-path single-slot case: new = old - lr * full gradient entry
        circuit = ry_on_first_of_two()
        ham = z_term(2)
        lr = 0.1
        theta0 = 0.9
        config = OptimizerConfig(learning_rate=lr, max_iterations=1)
        rng = np.random.default_rng(4)
        trajectory = path_optimize(
            circuit, ham, [theta0], Strategy.RANDOM_PATH, config, rng
        )
        expected = theta0 - lr * gradient(circuit, ham, [theta0])[0]
        assert trajectory.final_params[0] == expected

    def test_fallback_on_metric_disconnection(self, monkeypatch):
        def always_disconnected(cone, terminal):
            raise MetricDisconnectedError("forced")

        monkeypatch.setattr(optimizers, "shortest_paths", always_disconnected)
        circuit = build_vqe_ansatz(3, 1)
        ham = z_term(3, qubit=1)
        config = OptimizerConfig(learning_rate=0.05, max_iterations=3)
        rng = np.random.default_rng(5)
        trajectory = path_optimize(
            circuit, ham, np.full(circuit.n_params, 0.4), Strategy.SHORTEST_PATH,
            config, rng,
        )
        assert trajectory.fallback_count == 3  # one per iteration, one term
        assert len(trajectory.records) == 4

    def test_rejects_non_path_strategy(self):
        circuit = ry_on_first_of_two()
        config = OptimizerConfig(learning_rate=0.1, max_iterations=1)
        with pytest.raises(ValueError, match="path strategy"):
            path_optimize(circuit, z_term(2), [0.1], Strategy.SGD, config,
                          np.random.default_rng(0))


class TestSgd:
    def test_monotone_descent_small_lr(self):
        circuit = ry_on_first_of_two()
        config = OptimizerConfig(learning_rate=0.05, max_iterations=30)
        trajectory = sgd_optimize(circuit, z_term(2), [1.0], config,
                                  np.random.default_rng(0))
        diffs = np.diff(trajectory.objectives)
        assert np.all(diffs <= 1e-12)

    def test_matches_hand_rolled_descent(self):
        circuit = build_vqe_ansatz(3, 1)
        ham = z_term(3)
        lr = 0.1
        rng = np.random.default_rng(6)
        init = rng.uniform(0, 2 * np.pi, circuit.n_params)
        config = OptimizerConfig(learning_rate=lr, max_iterations=4)
        trajectory = sgd_optimize(circuit, ham, init, config, np.random.default_rng(0))
        params = init.copy()
        for _ in range(4):
            params -= lr * gradient(circuit, ham, params)
        np.testing.assert_array_equal(trajectory.final_params, params)

    def test_nshot_mode_tracks_exact(self):
        circuit = ry_on_first_of_two()
        ham = z_term(2)
        exact_cfg = OptimizerConfig(learning_rate=0.1, max_iterations=10)
        shot_cfg = OptimizerConfig(learning_rate=0.1, max_iterations=10, n_shots=10**6)
        exact = sgd_optimize(circuit, ham, [1.2], exact_cfg, np.random.default_rng(0))
        shots = sgd_optimize(circuit, ham, [1.2], shot_cfg, np.random.default_rng(0))
        np.testing.assert_allclose(shots.objectives, exact.objectives, atol=0.01)


class TestNesterov:
    def test_zero_momentum_reduces_to_sgd(self):
        circuit = build_vqe_ansatz(3, 1)
        ham = z_term(3, qubit=1)
        rng = np.random.default_rng(7)
        init = rng.uniform(0, 2 * np.pi, circuit.n_params)
        config = OptimizerConfig(learning_rate=0.1, max_iterations=6, momentum=0.0)
        nag = nesterov_optimize(circuit, ham, init, config, np.random.default_rng(0))
        sgd = sgd_optimize(circuit, ham, init, config, np.random.default_rng(0))
        assert nag.objectives == sgd.objectives
        np.testing.assert_array_equal(nag.final_params, sgd.final_params)

    def test_first_step_equals_plain_gradient_step(self):
        # with v0 = 0 the first lookahead is theta0 itself
        circuit = ry_on_first_of_two()
        ham = z_term(2)
        theta0, lr = 2.0, 0.1
        config = OptimizerConfig(learning_rate=lr, max_iterations=1, momentum=0.9)
        trajectory = nesterov_optimize(circuit, ham, [theta0], config,
                                       np.random.default_rng(0))
        expected = theta0 - lr * gradient(circuit, ham, [theta0])[0]
        assert trajectory.final_params[0] == pytest.approx(expected, abs=1e-15)

    def test_momentum_accelerates_on_cosine(self):
        circuit = ry_on_first_of_two()
        ham = z_term(2)

        def iterations_to_reach(momentum, target=-1.0 + 1e-3):
            config = OptimizerConfig(learning_rate=0.1, max_iterations=200,
                                     momentum=momentum)
            trajectory = nesterov_optimize(circuit, ham, [2.5], config,
                                           np.random.default_rng(0))
            for record in trajectory.records:
                if record.objective <= target:
                    return record.iteration
            return None

        fast = iterations_to_reach(0.9)
        slow = iterations_to_reach(0.0)
        assert fast is not None
        assert slow is None or fast < slow


class TestConfigValidation:
    def test_bad_learning_rate(self):
        with pytest.raises(ValueError):
            OptimizerConfig(learning_rate=0.0, max_iterations=1)

    def test_bad_momentum(self):
        with pytest.raises(ValueError):
            OptimizerConfig(learning_rate=0.1, max_iterations=1, momentum=1.0)

    def test_bad_iterations(self):
        with pytest.raises(ValueError):
            OptimizerConfig(learning_rate=0.1, max_iterations=0)


class TestEnergyObjective:
    def test_value_is_expectation(self):
        circuit = ry_on_first_of_two()
        objective = EnergyObjective(circuit, z_term(2))
        assert objective.value(np.array([0.0])) == pytest.approx(1.0)
        assert objective.value(np.array([np.pi])) == pytest.approx(-1.0)

    def test_term_qubits_from_hamiltonian(self):
        ham = Hamiltonian(
            [
                PauliTerm.from_dict(1.0, {0: "X", 1: "X"}),
                PauliTerm.from_dict(0.5, {2: "Z"}),
            ],
            3,
        )
        circuit = build_vqe_ansatz(3, 1)
        objective = EnergyObjective(circuit, ham)
        assert objective.term_qubits == ((0, 1), (2,))
