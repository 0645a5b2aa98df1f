"""Readers for the simulator's file formats, with named schema errors."""

from __future__ import annotations

import csv
import json

import numpy as np

TRAJECTORY_COLUMNS = ("step", "agent", "opinion", "action", "discrepancy")
SWEEP_COLUMNS = ("epsilon", "phi", "mean_D", "std_D", "runs")


class SchemaError(ValueError):
    """The input file does not match the documented schema."""


def _read_csv(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        for column in required:
            if column not in header:
                raise SchemaError(f"{path}: missing column '{column}'")
        index = {column: header.index(column) for column in required}
        rows = {column: [] for column in required}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SchemaError(f"{path}: line {lineno} has {len(row)} fields, expected {len(header)}")
            try:
                for column in required:
                    rows[column].append(float(row[index[column]]))
            except ValueError:
                raise SchemaError(f"{path}: line {lineno} has a non-numeric value") from None
    if not rows[required[0]]:
        raise SchemaError(f"{path}: no data rows")
    return {column: np.asarray(values) for column, values in rows.items()}


def read_trajectory_csv(path: str) -> dict[str, np.ndarray]:
    """Load a long-format trajectory into (steps, agents) matrices.

    Returns ``steps`` (1-D) plus ``opinion``, ``action``, ``discrepancy``
    matrices of shape (n_steps, n_agents).
    """
    cols = _read_csv(path, TRAJECTORY_COLUMNS)
    steps = np.unique(cols["step"].astype(int))
    agents = np.unique(cols["agent"].astype(int))
    expected = steps.size * agents.size
    if cols["step"].size != expected:
        raise SchemaError(f"{path}: expected {expected} rows for a full step x agent grid")
    order = np.lexsort((cols["agent"], cols["step"]))
    shape = (steps.size, agents.size)
    return {
        "steps": steps,
        "opinion": cols["opinion"][order].reshape(shape),
        "action": cols["action"][order].reshape(shape),
        "discrepancy": cols["discrepancy"][order].reshape(shape),
    }


def read_sweep_csv(path: str) -> dict[str, np.ndarray]:
    """Load sweep cells into grid form: epsilon/phi axes and a mean_D matrix."""
    cols = _read_csv(path, SWEEP_COLUMNS)
    eps_axis = np.unique(cols["epsilon"])
    phi_axis = np.unique(cols["phi"])
    if cols["epsilon"].size != eps_axis.size * phi_axis.size:
        raise SchemaError(f"{path}: cells do not form a full epsilon x phi grid")
    grid = np.full((phi_axis.size, eps_axis.size), np.nan)
    e_index = {v: i for i, v in enumerate(eps_axis)}
    p_index = {v: i for i, v in enumerate(phi_axis)}
    for eps, phi, mean_d in zip(cols["epsilon"], cols["phi"], cols["mean_D"]):
        grid[p_index[phi], e_index[eps]] = mean_d
    if np.isnan(grid).any():
        raise SchemaError(f"{path}: duplicate or missing grid cells")
    return {"epsilon": eps_axis, "phi": phi_axis, "mean_D": grid}


def read_summary_json(path: str) -> dict:
    """Load a run summary; used to mark the committed-minority block."""
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return payload


def minority_count(summary: dict) -> int:
    """Number of leading agent rows pinned by the scenario's minority block."""
    config = summary.get("config", {})
    minority = config.get("minority")
    if not minority:
        return 0
    if "count" in minority:
        return int(minority["count"])
    return int(minority.get("fraction", 0.0) * int(config.get("n", 0)) + 1e-9)
