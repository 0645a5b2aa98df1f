"""Command-line interface.

Subcommands:

* ``run PRESET|--config PATH``   -- simulate one scenario, write
  trajectory.csv + summary.json (+ graph.edges for network topologies).
* ``sweep PRESET|--config PATH`` -- run a sensitivity grid, write
  sweep.csv + boundary_report.json.
* ``netgen {complete,sw,sf} ...`` -- generate a graph, write graph.edges.

Exit codes: 0 success, 1 usage or configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import engine, metrics, output, presets
from .config import parse_config_file
from .errors import SimulationError
from .graph import barabasi_albert, complete_graph, watts_strogatz
from .metrics import DEFAULT_CLUSTER_GAP
from .sweep import SweepSpec, boundary_report, run_sweep

# parse_config is part of this command-line surface; re-exported for callers.
from .config import parse_config  # noqa: F401


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="normsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_target(p: argparse.ArgumentParser) -> None:
        p.add_argument("preset", nargs="?", help=f"preset name ({', '.join(presets.preset_names())})")
        p.add_argument("--config", metavar="PATH", help="JSON config document")
        p.add_argument("--seed", type=int, default=None, help="master seed (default 0, overrides config)")
        p.add_argument("--out", metavar="DIR", default=".", help="output directory (default .)")
        p.add_argument("--tol", type=float, default=None, help="override convergence tolerance")

    p_run = sub.add_parser("run", parents=[], help="simulate one scenario")
    add_target(p_run)
    p_run.add_argument(
        "--cluster-gap",
        type=float,
        default=DEFAULT_CLUSTER_GAP,
        help=f"sorted-gap cluster threshold (default {DEFAULT_CLUSTER_GAP})",
    )

    p_sweep = sub.add_parser("sweep", help="run a sensitivity grid")
    add_target(p_sweep)
    p_sweep.add_argument("-j", "--jobs", type=int, default=1, help="parallel worker processes (default 1)")

    p_net = sub.add_parser("netgen", help="generate a graph and write graph.edges")
    net_sub = p_net.add_subparsers(dest="topology", required=True)
    p_complete = net_sub.add_parser("complete", help="complete graph K_n")
    p_complete.add_argument("n", type=int)
    p_sw = net_sub.add_parser("sw", help="small-world graph SW(n, k, p)")
    p_sw.add_argument("n", type=int)
    p_sw.add_argument("k", type=int)
    p_sw.add_argument("p", type=float)
    p_sf = net_sub.add_parser("sf", help="scale-free graph SF(n, m0, m)")
    p_sf.add_argument("n", type=int)
    p_sf.add_argument("m0", type=int)
    p_sf.add_argument("m", type=int)
    for p in (p_complete, p_sw, p_sf):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", metavar="DIR", default=".", help="output directory (default .)")
    return parser


def _load_target(args) -> presets.PresetValue:
    if (args.preset is None) == (args.config is None):
        raise SimulationError("give exactly one of a preset name or --config PATH")
    if args.preset is not None:
        return presets.expand(args.preset, seed=args.seed if args.seed is not None else 0)
    value = parse_config_file(args.config)
    if args.seed is not None:
        value = replace(value, master_seed=args.seed)
    return value


def _apply_tol(value, tol):
    if tol is None:
        return value
    if isinstance(value, SweepSpec):
        return replace(value, base=replace(value.base, convergence_tol=tol))
    return replace(value, convergence_tol=tol)


def _cmd_run(args) -> int:
    config = _apply_tol(_load_target(args), args.tol)
    if isinstance(config, SweepSpec):
        raise SimulationError("target describes a sweep; use the 'sweep' command")
    output.ensure_directory(args.out)
    trajectory = engine.run(config)
    summary = metrics.summarize(trajectory, cluster_gap=args.cluster_gap)
    output.write_trajectory_csv(trajectory, os.path.join(args.out, "trajectory.csv"))
    output.write_json(
        output.summary_payload(trajectory, summary, args.cluster_gap),
        os.path.join(args.out, "summary.json"),
    )
    if trajectory.config.topology.kind != "complete":
        output.write_graph_file(trajectory.graph, os.path.join(args.out, "graph.edges"))
    print(output.digest_line(trajectory, summary))
    return 0


def _cmd_sweep(args) -> int:
    spec = _apply_tol(_load_target(args), args.tol)
    if not isinstance(spec, SweepSpec):
        raise SimulationError("target describes a single scenario; use the 'run' command")
    output.ensure_directory(args.out)
    result = run_sweep(spec, workers=args.jobs)
    report = boundary_report(result)
    output.write_sweep_csv(result, os.path.join(args.out, "sweep.csv"))
    output.write_json(
        output.boundary_payload(result, report),
        os.path.join(args.out, "boundary_report.json"),
    )
    print(output.sweep_digest_line(result, report))
    return 0


def _cmd_netgen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.topology == "complete":
        graph = complete_graph(args.n)
    elif args.topology == "sw":
        graph = watts_strogatz(args.n, args.k, args.p, rng)
    else:
        graph = barabasi_albert(args.n, args.m0, args.m, rng)
    output.ensure_directory(args.out)
    output.write_graph_file(graph, os.path.join(args.out, "graph.edges"))
    print(
        f"nodes={graph.node_count} edges={graph.edge_count} "
        f"max_degree={graph.max_degree()} components={graph.component_count()}"
    )
    return 0


_COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "netgen": _cmd_netgen}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SimulationError as exc:
        print(f"normsim: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"normsim: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
