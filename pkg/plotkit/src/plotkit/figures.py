"""Figure rendering: dynamics panels and the sensitivity contour."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import minority_count, read_summary_json, read_sweep_csv, read_trajectory_csv

PANELS = {
    "opinion": "Opinion",
    "action": "Action",
    "discrepancy": "Opinion-action discrepancy",
}

FLEXIBLE_COLOR = "tab:blue"
MINORITY_COLOR = "tab:red"
BOUNDARY = (10.0, 3.0, 3.5)  # aligned when 10*eps + 3*phi >= 3.5


def render_dynamics(
    trajectory_path: str,
    out_path: str,
    panels: int = 3,
    summary_path: str | None = None,
    alpha: float = 0.25,
) -> str:
    """One line per agent per panel; optional minority rows drawn apart.

    ``panels`` is 3 (opinion, action, discrepancy) or 2 (opinion, action).
    """
    if panels not in (2, 3):
        raise ValueError(f"panels must be 2 or 3, got {panels}")
    data = read_trajectory_csv(trajectory_path)
    pinned = minority_count(read_summary_json(summary_path)) if summary_path else 0

    keys = list(PANELS)[:panels]
    fig, axes = plt.subplots(1, panels, figsize=(4.2 * panels, 3.4), sharex=True)
    steps = data["steps"]
    for ax, key in zip(np.atleast_1d(axes), keys):
        series = data[key]
        ax.plot(steps, series[:, pinned:], color=FLEXIBLE_COLOR, alpha=alpha, linewidth=0.7)
        if pinned:
            ax.plot(steps, series[:, :pinned], color=MINORITY_COLOR, alpha=alpha, linewidth=0.7)
        ax.set_xlabel("Time step")
        ax.set_ylabel(PANELS[key])
        ax.set_ylim(-0.02, 1.02)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_contour(sweep_path: str, out_path: str, levels: int = 12) -> str:
    """Mean group discrepancy over the (openness, commitment) grid, with the
    alignment boundary line overlaid."""
    data = read_sweep_csv(sweep_path)
    eps, phi, grid = data["epsilon"], data["phi"], data["mean_D"]

    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    filled = ax.contourf(eps, phi, grid, levels=levels, cmap="viridis")
    fig.colorbar(filled, ax=ax, label="Mean opinion-action discrepancy")

    a, b, c = BOUNDARY
    line_eps = np.linspace(eps.min(), eps.max(), 200)
    line_phi = (c - a * line_eps) / b
    inside = (line_phi >= phi.min()) & (line_phi <= phi.max())
    ax.plot(line_eps[inside], line_phi[inside], "w--", linewidth=1.5, label="10ε + 3φ = 3.5")
    ax.legend(loc="upper right")
    ax.set_xlabel("Openness ε")
    ax.set_ylabel("Commitment φ")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
