"""Deterministic agent-based simulator of opinion-action coevolution.

Agents hold a private opinion and show a public action; opinions move by
bounded confidence over observed actions, and actions maximize a quadratic
trade-off between the own opinion and the group's mean action. The package
bundles the update rules, graph generators, a reproducible run engine,
summary metrics, a sensitivity-sweep harness, and a CLI.
"""

from .core import (
    AgentState,
    Population,
    UtilityTerms,
    classical_hk_step,
    evaluate_utility,
    neighbor_set,
    update_action,
    update_opinion,
)
from .engine import (
    CompleteTopology,
    EdgeListTopology,
    MinorityConfig,
    ScaleFreeTopology,
    ScenarioConfig,
    SmallWorldTopology,
    Trajectory,
    build_population,
    run,
    step,
)
from .errors import ConfigurationError, ContractViolationError, ParseError, SimulationError
from .graph import Graph, barabasi_albert, complete_graph, read_edge_list, watts_strogatz, write_edge_list
from .metrics import DEFAULT_CLUSTER_GAP, RunSummary, count_clusters, group_discrepancy, summarize
from .sweep import BoundaryReport, SweepResult, SweepSpec, boundary_report, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "BoundaryReport",
    "CompleteTopology",
    "ConfigurationError",
    "ContractViolationError",
    "DEFAULT_CLUSTER_GAP",
    "EdgeListTopology",
    "Graph",
    "MinorityConfig",
    "ParseError",
    "Population",
    "RunSummary",
    "ScaleFreeTopology",
    "ScenarioConfig",
    "SimulationError",
    "SmallWorldTopology",
    "SweepResult",
    "SweepSpec",
    "Trajectory",
    "UtilityTerms",
    "barabasi_albert",
    "boundary_report",
    "build_population",
    "classical_hk_step",
    "complete_graph",
    "count_clusters",
    "evaluate_utility",
    "group_discrepancy",
    "neighbor_set",
    "read_edge_list",
    "run",
    "run_sweep",
    "step",
    "summarize",
    "update_action",
    "update_opinion",
    "watts_strogatz",
    "write_edge_list",
]
