"""Figure rendering for normsim artifacts.

Reads the simulator's documented CSV/JSON outputs and renders the three
figure kinds: per-agent dynamics panels (opinion / action / discrepancy
over time) and the (openness, commitment) sensitivity contour. Pure
file-to-file transforms; no simulation code is imported.
"""

from .schema import SchemaError, read_summary_json, read_sweep_csv, read_trajectory_csv
from .figures import render_contour, render_dynamics

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "read_summary_json",
    "read_sweep_csv",
    "read_trajectory_csv",
    "render_contour",
    "render_dynamics",
]
