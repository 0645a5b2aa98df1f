"""Summary statistics derived from trajectories.

The headline quantity is the group discrepancy D: the population mean of
|opinion - action| at the final recorded step. Cluster counts use a
sorted-gap detector -- a new cluster starts wherever two consecutive sorted
values differ by more than the gap threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .engine import Trajectory
from .errors import ContractViolationError

DEFAULT_CLUSTER_GAP = 0.01


def group_discrepancy(opinions, actions) -> float:
    """Mean |opinion - action| over the population."""
    x = np.asarray(opinions, dtype=float)
    y = np.asarray(actions, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ContractViolationError(
            f"opinions and actions must be equal-length vectors, got {x.shape} and {y.shape}"
        )
    if x.size < 1:
        raise ContractViolationError("discrepancy of an empty population is undefined")
    return float(np.abs(x - y).mean())


def count_clusters(values, gap_threshold: float = DEFAULT_CLUSTER_GAP) -> int:
    """Number of clusters under the sorted-gap rule."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ContractViolationError("cluster counting needs a nonempty vector")
    if not gap_threshold > 0.0:
        raise ContractViolationError(f"gap threshold must be positive, got {gap_threshold!r}")
    ordered = np.sort(v)
    return int(1 + (np.diff(ordered) > gap_threshold).sum())


@dataclass
class RunSummary:
    """Final-state statistics of one run.

    For minority scenarios ``flexible`` repeats the statistics restricted
    to the non-minority agents and ``flexible_mask`` marks them.
    """

    group_discrepancy: float
    max_discrepancy: float
    opinion_cluster_count: int
    action_cluster_count: int
    opinion_values: np.ndarray
    action_values: np.ndarray
    flexible_mask: Optional[np.ndarray] = None
    flexible: Optional["RunSummary"] = None


def _summarize_values(opinions: np.ndarray, actions: np.ndarray, gap: float) -> RunSummary:
    return RunSummary(
        group_discrepancy=group_discrepancy(opinions, actions),
        max_discrepancy=float(np.abs(opinions - actions).max()),
        opinion_cluster_count=count_clusters(opinions, gap),
        action_cluster_count=count_clusters(actions, gap),
        opinion_values=opinions.copy(),
        action_values=actions.copy(),
    )


def summarize(trajectory: Trajectory, cluster_gap: float = DEFAULT_CLUSTER_GAP) -> RunSummary:
    """Summarize the final snapshot of a trajectory."""
    summary = _summarize_values(trajectory.final_opinions, trajectory.final_actions, cluster_gap)
    mask = trajectory.flexible_mask()
    if mask is not None:
        summary.flexible_mask = mask
        summary.flexible = _summarize_values(
            trajectory.final_opinions[mask], trajectory.final_actions[mask], cluster_gap
        )
    return summary
