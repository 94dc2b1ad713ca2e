"""Configuration-driven experiment runner with CSV/JSON outputs.

Every run (strategy x seed) is reproducible from the config alone: run
seeds are base_seed + seed index (the same seed set for every strategy, so
strategies are compared from identical initializations), parameters start
uniform in [0, 2pi), and all randomness flows through one generator per
run. Reruns produce byte-identical CSV files.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import build_vqc_ansatz, build_vqe_ansatz
from .optimizers import (
    OptimizerConfig,
    Strategy,
    nesterov_optimize,
    path_optimize,
    sgd_optimize,
)
from .problems import (
    LatticeSpec,
    VqcLossObjective,
    build_xxz,
    parity_dataset,
)

CSV_HEADER = ["experiment", "strategy", "seed", "iteration", "objective",
              "accuracy", "updates"]


@dataclass
class ExperimentConfig:
    experiment: str  # "vqe" | "vqc"
    layers: int
    strategies: list[str]
    learning_rate: float
    iterations: int
    n_seeds: int
    base_seed: int = 0
    # vqe
    rows: int = 2
    cols: int = 3
    j: float = 1.0
    delta: float = -20.0
    field_h: float = 0.0
    # vqc
    n_bits: int = 4
    # common
    momentum: float = 0.9
    n_shots: int | None = None
    workers: int = 1
    out: str = "results.csv"

    def __post_init__(self) -> None:
        if self.experiment not in ("vqe", "vqc"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        for name in self.strategies:
            Strategy(name)  # raises on unknown strategy names
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.n_shots is not None and self.experiment == "vqc":
            raise ValueError("n-shot mode is only supported for vqe")

    @classmethod
    def from_json(cls, path: str | Path, **overrides) -> "ExperimentConfig":
        data = json.loads(Path(path).read_text())
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


def _build_problem(config: ExperimentConfig):
    """Returns (circuit, problem objective factory input)."""
    if config.experiment == "vqe":
        spec = LatticeSpec(config.rows, config.cols, j_x=config.j, j_y=config.j,
                           j_z=config.delta, field=config.field_h)
        circuit = build_vqe_ansatz(spec.n_qubits, config.layers)
        return circuit, build_xxz(spec)
    circuit = build_vqc_ansatz(config.n_bits, config.layers)
    return circuit, VqcLossObjective(circuit, parity_dataset(config.n_bits))


def _run_single(config: ExperimentConfig, strategy_name: str, seed: int) -> dict:
    circuit, problem = _build_problem(config)
    strategy = Strategy(strategy_name)
    rng = np.random.default_rng(seed)
    init = rng.uniform(0.0, 2.0 * math.pi, circuit.n_params)
    opt_config = OptimizerConfig(
        learning_rate=config.learning_rate,
        max_iterations=config.iterations,
        momentum=config.momentum,
        n_shots=config.n_shots,
    )
    start = time.perf_counter()
    if strategy is Strategy.SGD:
        trajectory = sgd_optimize(circuit, problem, init, opt_config, rng)
    elif strategy is Strategy.NESTEROV:
        trajectory = nesterov_optimize(circuit, problem, init, opt_config, rng)
    else:
        trajectory = path_optimize(circuit, problem, init, strategy, opt_config, rng)
    elapsed = time.perf_counter() - start
    rows = []
    for record in trajectory.records:
        accuracy = "" if record.accuracy is None else repr(record.accuracy)
        rows.append([config.experiment, strategy_name, str(seed),
                     str(record.iteration), repr(record.objective), accuracy,
                     str(record.updates)])
    return {
        "strategy": strategy_name,
        "seed": seed,
        "rows": rows,
        "wall_time_s": elapsed,
        "fallback_count": trajectory.fallback_count,
    }


def run_experiment(config: ExperimentConfig) -> tuple[Path, Path]:
    """Run all (strategy, seed) combinations; write the results CSV and a
    manifest JSON next to it. Returns (csv_path, manifest_path)."""
    tasks = [
        (config, strategy, config.base_seed + index)
        for strategy in config.strategies
        for index in range(config.n_seeds)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_single_star, tasks))
    else:
        results = [_run_single(*task) for task in tasks]

    csv_path = Path(config.out)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    with csv_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for result in results:  # already in (strategy, seed) task order
            writer.writerows(result["rows"])

    manifest = {
        "config": asdict(config),
        "version": __version__,
        "runs": [
            {
                "strategy": r["strategy"],
                "seed": r["seed"],
                "wall_time_s": r["wall_time_s"],
                "fallback_count": r["fallback_count"],
            }
            for r in results
        ],
    }
    manifest_path = csv_path.with_suffix(".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return csv_path, manifest_path


def _run_single_star(task) -> dict:
    return _run_single(*task)


SUMMARY_HEADER = [
    "strategy", "iteration", "runs",
    "objective_mean", "objective_min", "objective_max", "objective_std",
    "accuracy_mean", "accuracy_min", "accuracy_max", "accuracy_std",
]


def _stats(values: list[float]) -> list[str]:
    arr = np.array(values, dtype=float)
    return [repr(float(arr.mean())), repr(float(arr.min())),
            repr(float(arr.max())), repr(float(arr.std()))]


def summarize(csv_path: str | Path) -> list[dict[str, str]]:
    """Per (strategy, iteration): mean/min/max/std of objective and, when
    present, accuracy across seeds."""
    groups: dict[tuple[str, int], dict[str, list[float]]] = {}
    order: list[tuple[str, int]] = []
    with Path(csv_path).open() as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(
                f"unexpected CSV header {reader.fieldnames}, want {CSV_HEADER}"
            )
        for row in reader:
            key = (row["strategy"], int(row["iteration"]))
            if key not in groups:
                groups[key] = {"objective": [], "accuracy": []}
                order.append(key)
            groups[key]["objective"].append(float(row["objective"]))
            if row["accuracy"] != "":
                groups[key]["accuracy"].append(float(row["accuracy"]))
    out = []
    for strategy, iteration in order:
        bucket = groups[(strategy, iteration)]
        record = {
            "strategy": strategy,
            "iteration": str(iteration),
            "runs": str(len(bucket["objective"])),
        }
        for name, values in zip(
            ("objective_mean", "objective_min", "objective_max", "objective_std"),
            _stats(bucket["objective"]),
        ):
            record[name] = values
        if bucket["accuracy"]:
            stats = _stats(bucket["accuracy"])
        else:
            stats = ["", "", "", ""]
        for name, value in zip(
            ("accuracy_mean", "accuracy_min", "accuracy_max", "accuracy_std"), stats
        ):
            record[name] = value
        out.append(record)
    return out


def write_summary(records: list[dict[str, str]], path: str | Path) -> None:
    with Path(path).open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=SUMMARY_HEADER)
        writer.writeheader()
        writer.writerows(records)


def format_summary(records: list[dict[str, str]]) -> str:
    lines = [",".join(SUMMARY_HEADER)]
    for record in records:
        lines.append(",".join(record[name] for name in SUMMARY_HEADER))
    return "\n".join(lines) + "\n"
