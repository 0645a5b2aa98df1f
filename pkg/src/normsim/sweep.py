"""Sensitivity sweeps over the (openness, commitment) grid.

Each grid cell runs several independent replicates of the base scenario
with the cell's trait values; the per-run group discrepancy D is
aggregated to a mean and standard deviation per cell. Replicate seeds
derive from (master_seed, cell values, replicate index) only, so cell
results are independent of execution order, of parallelism, and of how
the rest of the grid is laid out.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .engine import SWEEP_RUN_STREAM, ScenarioConfig, run, subseed
from .errors import ConfigurationError
from .metrics import group_discrepancy

ALIGNMENT_RULE = "10*epsilon + 3*phi >= 3.5"


def alignment_rule(epsilon: float, phi: float) -> bool:
    """Linear boundary separating aligned from divergent regimes."""
    return 10.0 * epsilon + 3.0 * phi >= 3.5


def grid_values(start: float, stop: float, step: float, name: str = "grid") -> tuple[float, ...]:
    """Inclusive-endpoint grid; the step must divide the range evenly."""
    start, stop, step = float(start), float(stop), float(step)
    if not step > 0.0:
        raise ConfigurationError(f"{name}: step must be positive, got {step}")
    if stop < start:
        raise ConfigurationError(f"{name}: range bounds out of order ({start} > {stop})")
    span = (stop - start) / step
    cells = round(span)
    if abs(span - cells) > 1e-9:
        raise ConfigurationError(f"{name}: step {step} does not divide range [{start}, {stop}]")
    return tuple(round(start + i * step, 12) for i in range(int(cells) + 1))


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition plus the scenario template.

    The template's own openness and commitment are ignored; each cell
    substitutes its grid values. Openness values must stay within [0, 0.5]
    (beyond that the dynamics are uniformly consensual) and commitment
    within [0, 1].
    """

    epsilon_values: tuple[float, ...]
    phi_values: tuple[float, ...]
    runs_per_cell: int
    base: ScenarioConfig
    master_seed: int = 0

    def __post_init__(self) -> None:
        eps = tuple(float(v) for v in self.epsilon_values)
        phi = tuple(float(v) for v in self.phi_values)
        if not eps or not phi:
            raise ConfigurationError("sweep grids must be nonempty")
        for name, values, hi in (("epsilon", eps, 0.5), ("phi", phi, 1.0)):
            if any(not 0.0 <= v <= hi for v in values):
                raise ConfigurationError(f"{name}: grid values must lie in [0, {hi}]")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ConfigurationError(f"{name}: grid values must be strictly increasing")
        object.__setattr__(self, "epsilon_values", eps)
        object.__setattr__(self, "phi_values", phi)
        if not isinstance(self.runs_per_cell, (int, np.integer)) or isinstance(self.runs_per_cell, bool) or self.runs_per_cell < 1:
            raise ConfigurationError(f"runs_per_cell: must be a positive integer, got {self.runs_per_cell!r}")
        object.__setattr__(self, "runs_per_cell", int(self.runs_per_cell))
        if not isinstance(self.master_seed, (int, np.integer)) or isinstance(self.master_seed, bool) or not 0 <= self.master_seed < 2**64:
            raise ConfigurationError(f"seed: must fit in 64 unsigned bits, got {self.master_seed!r}")
        object.__setattr__(self, "master_seed", int(self.master_seed))

    @classmethod
    def from_ranges(
        cls,
        base: ScenarioConfig,
        epsilon: tuple[float, float, float] = (0.0, 0.5, 0.05),
        phi: tuple[float, float, float] = (0.0, 1.0, 0.05),
        runs_per_cell: int = 10,
        master_seed: int = 0,
    ) -> "SweepSpec":
        return cls(
            epsilon_values=grid_values(*epsilon, name="epsilon"),
            phi_values=grid_values(*phi, name="phi"),
            runs_per_cell=runs_per_cell,
            base=base,
            master_seed=master_seed,
        )

    def cell_count(self) -> int:
        return len(self.epsilon_values) * len(self.phi_values)


@dataclass(frozen=True)
class CellStats:
    epsilon: float
    phi: float
    mean_discrepancy: float
    std_discrepancy: float
    run_count: int


@dataclass
class SweepResult:
    """Aggregated sweep output; ``cells`` is keyed by (epsilon, phi) in grid order."""

    spec: SweepSpec
    cells: dict[tuple[float, float], CellStats]

    def cell(self, epsilon: float, phi: float) -> CellStats:
        return self.cells[(float(epsilon), float(phi))]

    def rows(self) -> list[CellStats]:
        return list(self.cells.values())


def replicate_seed(master_seed: int, epsilon: float, phi: float, replicate: int) -> int:
    """Run seed for one replicate; a function of (master, cell values, index) only."""
    eps_key = int(round(float(epsilon) * 10**9))
    phi_key = int(round(float(phi) * 10**9))
    seq = subseed(master_seed, SWEEP_RUN_STREAM, eps_key, phi_key, int(replicate))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _cell_config(spec: SweepSpec, epsilon: float, phi: float, replicate: int) -> ScenarioConfig:
    return replace(
        spec.base,
        openness=float(epsilon),
        commitment=float(phi),
        master_seed=replicate_seed(spec.master_seed, epsilon, phi, replicate),
    )


def _final_discrepancy(config: ScenarioConfig) -> float:
    trajectory = run(config)
    return group_discrepancy(trajectory.final_opinions, trajectory.final_actions)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Execute every (cell, replicate) run and aggregate D per cell.

    ``workers > 1`` distributes runs over a process pool; results are
    keyed by task, so the output is identical at any parallelism degree.
    """
    if not isinstance(workers, (int, np.integer)) or workers < 1:
        raise ConfigurationError(f"workers must be a positive integer, got {workers!r}")
    configs = [
        _cell_config(spec, eps, phi, r)
        for eps in spec.epsilon_values
        for phi in spec.phi_values
        for r in range(spec.runs_per_cell)
    ]
    if workers == 1:
        discrepancies = [_final_discrepancy(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            chunk = max(1, len(configs) // (int(workers) * 4))
            discrepancies = list(pool.map(_final_discrepancy, configs, chunksize=chunk))

    cells: dict[tuple[float, float], CellStats] = {}
    idx = 0
    for eps in spec.epsilon_values:
        for phi in spec.phi_values:
            values = np.array(discrepancies[idx : idx + spec.runs_per_cell])
            idx += spec.runs_per_cell
            cells[(eps, phi)] = CellStats(
                epsilon=eps,
                phi=phi,
                mean_discrepancy=float(values.mean()),
                std_discrepancy=float(values.std()),
                run_count=spec.runs_per_cell,
            )
    return SweepResult(spec=spec, cells=cells)


@dataclass
class ClassStats:
    cell_count: int
    mean_of_means: float
    min_mean: float
    max_mean: float


def _class_stats(values: list[float]) -> ClassStats:
    if not values:
        return ClassStats(0, float("nan"), float("nan"), float("nan"))
    arr = np.array(values)
    return ClassStats(len(values), float(arr.mean()), float(arr.min()), float(arr.max()))


@dataclass
class BoundaryReport:
    """How well the linear alignment rule partitions the sweep cells.

    A cell on or above the line is *aligned* (expected mean D at most the
    threshold); below it, *divergent* (expected mean D above the
    threshold). Cells violating that expectation are listed.
    """

    discrepancy_threshold: float
    aligned: ClassStats
    divergent: ClassStats
    misclassified_aligned: list[tuple[float, float]]
    misclassified_divergent: list[tuple[float, float]]

    @property
    def misclassified_count(self) -> int:
        return len(self.misclassified_aligned) + len(self.misclassified_divergent)

    @property
    def consistent_fraction(self) -> float:
        total = self.aligned.cell_count + self.divergent.cell_count
        return 1.0 - self.misclassified_count / total if total else float("nan")


def boundary_report(result: SweepResult, threshold: float = 0.01) -> BoundaryReport:
    """Partition cells by the alignment rule and count rule violations."""
    aligned, divergent = [], []
    bad_aligned, bad_divergent = [], []
    for stats in result.rows():
        if alignment_rule(stats.epsilon, stats.phi):
            aligned.append(stats.mean_discrepancy)
            if stats.mean_discrepancy > threshold:
                bad_aligned.append((stats.epsilon, stats.phi))
        else:
            divergent.append(stats.mean_discrepancy)
            if stats.mean_discrepancy <= threshold:
                bad_divergent.append((stats.epsilon, stats.phi))
    return BoundaryReport(
        discrepancy_threshold=float(threshold),
        aligned=_class_stats(aligned),
        divergent=_class_stats(divergent),
        misclassified_aligned=bad_aligned,
        misclassified_divergent=bad_divergent,
    )


def epsilon_monotonicity_violations(result: SweepResult, slack: float = 0.01) -> list[tuple[float, float, float]]:
    """Soft check: holding phi fixed, mean D should not grow with epsilon.

    Returns (phi, epsilon, increase) for every step up the epsilon grid
    where mean D rose by more than ``slack``. Informational only; sampling
    noise makes occasional small violations normal.
    """
    violations = []
    for phi in result.spec.phi_values:
        means = [result.cell(eps, phi).mean_discrepancy for eps in result.spec.epsilon_values]
        for eps, before, after in zip(result.spec.epsilon_values[1:], means, means[1:]):
            if after - before > slack:
                violations.append((phi, eps, after - before))
    return violations
