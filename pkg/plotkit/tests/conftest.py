"""Shared fixtures: real artifacts produced through the simulator CLI."""

import subprocess
import sys

import pytest


def simulate(*argv, cwd=None):
    proc = subprocess.run(
        [sys.executable, "-m", "normsim.cli", *argv],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"normsim {' '.join(argv)} failed: {proc.stderr}")
    return proc


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """fig6 and fig10 runs plus the reduced sweep, generated once."""
    root = tmp_path_factory.mktemp("artifacts")
    simulate("run", "fig6", "--seed", "3", "--out", str(root / "fig6"))
    simulate("run", "fig10", "--seed", "3", "--out", str(root / "fig10"))
    simulate("sweep", "sweep-desk", "--seed", "1", "-j", "2", "--out", str(root / "desk"))
    return root
