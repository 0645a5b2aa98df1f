"""Artifact writers: CSV and JSON files with stable, re-readable formatting.

CSV reals carry 17 significant digits so a re-read recovers the exact
float; files are UTF-8 with LF line endings and a header row.
"""

from __future__ import annotations

import csv
import json
import os
from typing import Optional

from .engine import Trajectory
from .graph import Graph, write_edge_list
from .metrics import RunSummary
from .sweep import (
    ALIGNMENT_RULE,
    BoundaryReport,
    SweepResult,
    epsilon_monotonicity_violations,
)
from .config import scenario_document

TRAJECTORY_COLUMNS = ["step", "agent", "opinion", "action", "discrepancy"]
SWEEP_COLUMNS = ["epsilon", "phi", "mean_D", "std_D", "runs"]


def format_real(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(trajectory: Trajectory, path: str) -> None:
    """Long-format trajectory: one row per agent per recorded step."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_COLUMNS)
        steps, n = trajectory.opinions.shape
        for t in range(steps):
            x_row = trajectory.opinions[t]
            y_row = trajectory.actions[t]
            d_row = trajectory.discrepancy[t]
            for i in range(n):
                writer.writerow(
                    [t, i, format_real(x_row[i]), format_real(y_row[i]), format_real(d_row[i])]
                )


def _values_summary(summary: RunSummary) -> dict:
    return {
        "group_discrepancy": summary.group_discrepancy,
        "max_discrepancy": summary.max_discrepancy,
        "opinion_cluster_count": summary.opinion_cluster_count,
        "action_cluster_count": summary.action_cluster_count,
    }


def summary_payload(trajectory: Trajectory, summary: RunSummary, cluster_gap: float) -> dict:
    payload = {
        "config": scenario_document(trajectory.config),
        "seed": trajectory.seed,
        "stop_reason": trajectory.stop_reason,
        "steps_recorded": trajectory.step_count,
        "graph_component_count": trajectory.component_count,
        "cluster_gap": cluster_gap,
        **_values_summary(summary),
    }
    if summary.flexible is not None:
        payload["flexible"] = _values_summary(summary.flexible)
        payload["flexible_agent_count"] = int(summary.flexible_mask.sum())
    return payload


def write_json(payload: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True))
        fh.write("\n")


def digest_line(trajectory: Trajectory, summary: RunSummary) -> str:
    parts = [
        f"n={trajectory.n_agents}",
        f"steps={trajectory.step_count}",
        f"stop={trajectory.stop_reason}",
        f"D={summary.group_discrepancy:.6g}",
        f"max_d={summary.max_discrepancy:.6g}",
        f"opinion_clusters={summary.opinion_cluster_count}",
        f"action_clusters={summary.action_cluster_count}",
    ]
    if summary.flexible is not None:
        parts.append(f"flexible_D={summary.flexible.group_discrepancy:.6g}")
    return " ".join(parts)


def write_sweep_csv(result: SweepResult, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for cell in result.rows():
            writer.writerow(
                [
                    format_real(cell.epsilon),
                    format_real(cell.phi),
                    format_real(cell.mean_discrepancy),
                    format_real(cell.std_discrepancy),
                    cell.run_count,
                ]
            )


def boundary_payload(result: SweepResult, report: BoundaryReport) -> dict:
    def class_block(stats) -> Optional[dict]:
        if stats.cell_count == 0:
            return {"cells": 0}
        return {
            "cells": stats.cell_count,
            "mean_of_mean_D": stats.mean_of_means,
            "min_mean_D": stats.min_mean,
            "max_mean_D": stats.max_mean,
        }

    return {
        "rule": ALIGNMENT_RULE,
        "discrepancy_threshold": report.discrepancy_threshold,
        "aligned": class_block(report.aligned),
        "divergent": class_block(report.divergent),
        "misclassified_aligned": [list(c) for c in report.misclassified_aligned],
        "misclassified_divergent": [list(c) for c in report.misclassified_divergent],
        "misclassified_count": report.misclassified_count,
        "consistent_fraction": report.consistent_fraction,
        "epsilon_monotonicity_violations": len(epsilon_monotonicity_violations(result)),
    }


def sweep_digest_line(result: SweepResult, report: BoundaryReport) -> str:
    return (
        f"cells={len(result.cells)} runs_per_cell={result.spec.runs_per_cell} "
        f"aligned={report.aligned.cell_count} divergent={report.divergent.cell_count} "
        f"misclassified={report.misclassified_count} "
        f"consistent_fraction={report.consistent_fraction:.4f}"
    )


def write_graph_file(graph: Graph, path: str) -> None:
    with open(path, "wb") as fh:
        write_edge_list(graph, fh)


def ensure_directory(path: str) -> None:
    os.makedirs(path, exist_ok=True)
