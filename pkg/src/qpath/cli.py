"""Command-line entry points: vqe / vqc experiment runners, weighted graph
export, and results summarization."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .circuit import build_vqc_ansatz, build_vqe_ansatz, parse_dump
from .graph import build_graph, to_dot
from .harness import ExperimentConfig, format_summary, run_experiment, summarize, write_summary


def _add_common_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its fields")
    parser.add_argument("--layers", type=int)
    parser.add_argument("--strategy", help="comma-separated strategy names")
    parser.add_argument("--lr", type=float, dest="learning_rate")
    parser.add_argument("--seeds", type=int, dest="n_seeds")
    parser.add_argument("--base-seed", type=int, dest="base_seed")
    parser.add_argument("--momentum", type=float)
    parser.add_argument("--shots", type=int, dest="n_shots")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--out", help="results CSV path")


def _collect(args: argparse.Namespace, experiment: str, defaults: dict) -> ExperimentConfig:
    overrides = {
        "experiment": experiment,
        "layers": args.layers,
        "strategies": args.strategy.split(",") if args.strategy else None,
        "learning_rate": args.learning_rate,
        "iterations": getattr(args, "iterations", None),
        "n_seeds": args.n_seeds,
        "base_seed": args.base_seed,
        "momentum": args.momentum,
        "n_shots": args.n_shots,
        "workers": args.workers,
        "out": args.out,
    }
    for name in ("rows", "cols", "j", "delta", "field_h", "n_bits"):
        if hasattr(args, name):
            overrides[name] = getattr(args, name)
    if args.config:
        return ExperimentConfig.from_json(args.config, **overrides)
    merged = dict(defaults)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**merged)


def _cmd_vqe(args: argparse.Namespace) -> int:
    defaults = dict(experiment="vqe", layers=1, strategies=["shortest", "random", "sgd"],
                    learning_rate=0.1, iterations=100, n_seeds=5, out="vqe_results.csv")
    config = _collect(args, "vqe", defaults)
    csv_path, manifest_path = run_experiment(config)
    print(f"wrote {csv_path} and {manifest_path}")
    return 0


def _cmd_vqc(args: argparse.Namespace) -> int:
    defaults = dict(experiment="vqc", layers=2, strategies=["random", "shortest", "nesterov"],
                    learning_rate=0.1, iterations=50, n_seeds=5, out="vqc_results.csv")
    config = _collect(args, "vqc", defaults)
    csv_path, manifest_path = run_experiment(config)
    print(f"wrote {csv_path} and {manifest_path}")
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    if args.circuit:
        circuit = parse_dump(Path(args.circuit).read_text())
    elif args.ansatz == "vqe":
        circuit = build_vqe_ansatz(args.qubits, args.layers)
    elif args.ansatz == "vqc":
        circuit = build_vqc_ansatz(args.qubits, args.layers)
    else:
        print("either --circuit or --ansatz is required", file=sys.stderr)
        return 2
    rng = np.random.default_rng(args.params_seed)
    params = rng.uniform(0.0, 2.0 * math.pi, circuit.n_params)
    graph = build_graph(circuit, params)
    dot = to_dot(graph)
    Path(args.dump_dot).write_text(dot)
    print(f"wrote {args.dump_dot}")
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    records = summarize(args.infile)
    if args.out:
        write_summary(records, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(format_summary(records))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpath",
        description="Path-based optimization experiments for parameterized "
                    "quantum circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    vqe = sub.add_parser("vqe", help="XXZ-Heisenberg ground-state experiments")
    vqe.add_argument("--rows", type=int, default=None)
    vqe.add_argument("--cols", type=int, default=None)
    vqe.add_argument("--j", type=float, default=None)
    vqe.add_argument("--delta", type=float, default=None)
    vqe.add_argument("--field", type=float, dest="field_h", default=None)
    vqe.add_argument("--iters", type=int, dest="iterations", default=None)
    _add_common_run_flags(vqe)
    vqe.set_defaults(func=_cmd_vqe)

    vqc = sub.add_parser("vqc", help="n-bit parity classification experiments")
    vqc.add_argument("--bits", type=int, dest="n_bits", default=None)
    vqc.add_argument("--epochs", type=int, dest="iterations", default=None)
    _add_common_run_flags(vqc)
    vqc.set_defaults(func=_cmd_vqc)

    graph = sub.add_parser("graph", help="export a weighted circuit graph as DOT")
    graph.add_argument("--ansatz", choices=["vqe", "vqc"])
    graph.add_argument("--qubits", type=int, default=4)
    graph.add_argument("--layers", type=int, default=1)
    graph.add_argument("--circuit", help="circuit dump file (overrides --ansatz)")
    graph.add_argument("--params-seed", type=int, default=0)
    graph.add_argument("--dump-dot", required=True)
    graph.set_defaults(func=_cmd_graph)

    summ = sub.add_parser("summarize", help="per-strategy trajectory statistics")
    summ.add_argument("--in", dest="infile", required=True)
    summ.add_argument("--out", default=None)
    summ.set_defaults(func=_cmd_summarize)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
