"""Scenario construction and the synchronous simulation loop.

A scenario is fully described by :class:`ScenarioConfig`; a run is fully
reproducible from (config, master_seed). Randomness is split into labeled
child streams derived from the master seed (one for population draws, one
for topology construction, one for sweep replicates), so adding a new
random consumer can never perturb the draws of an existing one.

The per-step update is synchronous with a strict data-flow contract:

* phase 1 computes the population mean action (the subjective norm) and
  every new opinion from the time-t state only;
* phase 2 computes every new action from the new opinions and the phase-1
  norm.

No agent ever observes another agent's time-(t+1) value inside a step, and
the result does not depend on agent iteration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Union

import numpy as np

from .core import Population
from .errors import ConfigurationError
from .graph import (
    Graph,
    barabasi_albert,
    check_scale_free_params,
    check_small_world_params,
    complete_graph,
    read_edge_list,
    watts_strogatz,
)

# Labels for child seed streams. Append-only: renumbering breaks replay.
POPULATION_STREAM = 1
TOPOLOGY_STREAM = 2
SWEEP_RUN_STREAM = 3

_MAX_SEED = 2**64 - 1


def subseed(master_seed: int, *labels: int) -> np.random.SeedSequence:
    """Child seed stream for (master_seed, fixed labels)."""
    return np.random.SeedSequence([int(master_seed), *[int(v) for v in labels]])


def _check_probability_interval(name: str, value) -> tuple[float, float]:
    try:
        lo, hi = value
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name}: expected an interval [lo, hi], got {value!r}") from None
    lo, hi = float(lo), float(hi)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ConfigurationError(f"{name}: interval bounds must be finite")
    if lo > hi:
        raise ConfigurationError(f"{name}: interval bounds out of order ({lo} > {hi})")
    if lo < 0.0 or hi > 1.0:
        raise ConfigurationError(f"{name}: interval must lie within [0, 1]")
    return (lo, hi)


def _check_trait_spec(name: str, value):
    """A trait is a scalar in [0, 1] or a uniform interval within it."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        v = float(value)
        if not np.isfinite(v) or not 0.0 <= v <= 1.0:
            raise ConfigurationError(f"{name}: value must lie in [0, 1], got {value!r}")
        return v
    return _check_probability_interval(name, value)


def _draw_trait(spec, n: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(spec, tuple):
        return rng.uniform(spec[0], spec[1], n)
    return np.full(n, float(spec))


@dataclass(frozen=True)
class CompleteTopology:
    kind: ClassVar[str] = "complete"

    def check(self, n: int) -> None:
        pass

    def build(self, n: int, rng: np.random.Generator) -> Graph:
        return complete_graph(n)

    def to_document(self) -> dict:
        return {"kind": "complete"}


@dataclass(frozen=True)
class SmallWorldTopology:
    k: int
    p: float
    kind: ClassVar[str] = "small_world"

    def check(self, n: int) -> None:
        check_small_world_params(n, self.k, self.p)

    def build(self, n: int, rng: np.random.Generator) -> Graph:
        return watts_strogatz(n, self.k, self.p, rng)

    def to_document(self) -> dict:
        return {"kind": "small_world", "k": self.k, "p": self.p}


@dataclass(frozen=True)
class ScaleFreeTopology:
    m0: int
    m: int
    kind: ClassVar[str] = "scale_free"

    def check(self, n: int) -> None:
        check_scale_free_params(n, self.m0, self.m)

    def build(self, n: int, rng: np.random.Generator) -> Graph:
        return barabasi_albert(n, self.m0, self.m, rng)

    def to_document(self) -> dict:
        return {"kind": "scale_free", "m0": self.m0, "m": self.m}


@dataclass(frozen=True)
class EdgeListTopology:
    path: str
    kind: ClassVar[str] = "edge_list"

    def check(self, n: int) -> None:
        pass

    def build(self, n: int, rng: np.random.Generator) -> Graph:
        with open(self.path, "rb") as fh:
            graph = read_edge_list(fh)
        if graph.node_count != n:
            raise ConfigurationError(
                f"edge list {self.path!r} covers {graph.node_count} nodes, scenario has n={n}"
            )
        return graph

    def to_document(self) -> dict:
        return {"kind": "edge_list", "path": self.path}


Topology = Union[CompleteTopology, SmallWorldTopology, ScaleFreeTopology, EdgeListTopology]


@dataclass(frozen=True)
class MinorityConfig:
    """Committed block occupying the lowest agent indices.

    Defaults describe unwavering innovators: fixed at opinion = action = 1,
    closed to influence (openness 0), fully committed (commitment 1).
    Exactly one of ``fraction`` and ``count`` must be given.
    """

    fraction: float | None = None
    count: int | None = None
    opinion: float = 1.0
    openness: float = 0.0
    commitment: float = 1.0

    def __post_init__(self) -> None:
        if (self.fraction is None) == (self.count is None):
            raise ConfigurationError("minority: exactly one of fraction and count must be set")
        if self.fraction is not None:
            f = float(self.fraction)
            if not np.isfinite(f) or not 0.0 <= f <= 1.0:
                raise ConfigurationError(f"minority.fraction: must lie in [0, 1], got {self.fraction!r}")
            object.__setattr__(self, "fraction", f)
        if self.count is not None:
            if not isinstance(self.count, (int, np.integer)) or isinstance(self.count, bool) or self.count < 0:
                raise ConfigurationError(f"minority.count: must be a nonnegative integer, got {self.count!r}")
            object.__setattr__(self, "count", int(self.count))
        for name in ("opinion", "openness", "commitment"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"minority.{name}: must lie in [0, 1]")
            object.__setattr__(self, name, v)

    def size(self, n: int) -> int:
        if self.count is not None:
            return self.count
        # The 1e-9 nudge keeps decimal fractions like 0.2*300 from landing
        # one ulp below the intended integer.
        return math.floor(self.fraction * n + 1e-9)

    def to_document(self) -> dict:
        doc: dict = {}
        if self.fraction is not None:
            doc["fraction"] = self.fraction
        else:
            doc["count"] = self.count
        doc.update({"opinion": self.opinion, "openness": self.openness, "commitment": self.commitment})
        return doc


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce one run.

    ``openness`` and ``commitment`` are scalars or uniform [lo, hi]
    intervals; they apply to every agent, after which an optional minority
    block overrides the leading indices. ``convergence_tol`` of 0 disables
    early stopping.
    """

    n: int
    openness: float | tuple[float, float]
    commitment: float | tuple[float, float]
    horizon: int = 50
    master_seed: int = 0
    topology: Topology = field(default_factory=CompleteTopology)
    opinion_init: tuple[float, float] = (0.0, 1.0)
    minority: MinorityConfig | None = None
    convergence_tol: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ConfigurationError(f"n: must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not isinstance(self.horizon, (int, np.integer)) or isinstance(self.horizon, bool) or self.horizon < 0:
            raise ConfigurationError(f"horizon: must be a nonnegative integer, got {self.horizon!r}")
        object.__setattr__(self, "horizon", int(self.horizon))
        if not isinstance(self.master_seed, (int, np.integer)) or isinstance(self.master_seed, bool):
            raise ConfigurationError(f"seed: must be an integer, got {self.master_seed!r}")
        if not 0 <= self.master_seed <= _MAX_SEED:
            raise ConfigurationError(f"seed: must fit in 64 unsigned bits, got {self.master_seed}")
        object.__setattr__(self, "master_seed", int(self.master_seed))
        object.__setattr__(self, "openness", _check_trait_spec("openness", self.openness))
        object.__setattr__(self, "commitment", _check_trait_spec("commitment", self.commitment))
        object.__setattr__(self, "opinion_init", _check_probability_interval("opinion_init", self.opinion_init))
        tol = float(self.convergence_tol)
        if not np.isfinite(tol) or tol < 0.0:
            raise ConfigurationError(f"convergence_tol: must be a nonnegative real, got {self.convergence_tol!r}")
        object.__setattr__(self, "convergence_tol", tol)
        if self.minority is not None:
            if self.minority.size(self.n) >= self.n:
                raise ConfigurationError(
                    f"minority: block of {self.minority.size(self.n)} agents must be smaller than n={self.n}"
                )
        self.topology.check(self.n)

    def minority_size(self) -> int:
        return 0 if self.minority is None else self.minority.size(self.n)


def build_population(config: ScenarioConfig, rng: np.random.Generator | None = None) -> tuple[Population, Graph]:
    """Draw the initial population and construct the interaction graph.

    Opinions, openness, and commitment are drawn for every index in that
    fixed order; the minority block then overwrites the leading indices, so
    a flexible agent keeps the same draws whatever the block size. Actions
    start equal to opinions. The topology always uses its own child stream
    of the master seed, independent of ``rng``.
    """
    if rng is None:
        rng = np.random.default_rng(subseed(config.master_seed, POPULATION_STREAM))
    lo, hi = config.opinion_init
    opinions = rng.uniform(lo, hi, config.n)
    openness = _draw_trait(config.openness, config.n, rng)
    commitment = _draw_trait(config.commitment, config.n, rng)
    if config.minority is not None:
        m = config.minority.size(config.n)
        opinions[:m] = config.minority.opinion
        openness[:m] = config.minority.openness
        commitment[:m] = config.minority.commitment
    actions = opinions.copy()
    topology_rng = np.random.default_rng(subseed(config.master_seed, TOPOLOGY_STREAM))
    graph = config.topology.build(config.n, topology_rng)
    return Population(opinions, actions, openness, commitment), graph


def step(population: Population, graph: Graph) -> Population:
    """One synchronous update of every agent: opinions first, then actions.

    Vectorized over the whole population; agrees with the per-agent
    reference operations in :mod:`normsim.core` (see the engine tests).
    """
    n = len(population)
    if graph.node_count != n:
        raise ConfigurationError(
            f"graph covers {graph.node_count} nodes but population has {n} agents"
        )
    x = population.opinions
    y = population.actions
    norm = y.mean()

    distance_ok = np.abs(x[:, None] - y[None, :]) <= population.openness[:, None]
    mask = distance_ok & graph.adjacency_matrix()
    counts = mask.sum(axis=1)
    x_new = (np.where(mask, y[None, :], 0.0).sum(axis=1) + x) / (counts + 1.0)

    phi = population.commitment
    y_new = phi * x_new + (1.0 - phi) * norm
    return Population(x_new, y_new, population.openness, population.commitment)


@dataclass
class Trajectory:
    """Recorded run: snapshots for t = 0..T_final plus derived series.

    ``opinions`` and ``actions`` have shape (T_final + 1, n); ``norm`` is
    the population mean action per recorded step and ``discrepancy`` the
    per-agent |opinion - action|.
    """

    opinions: np.ndarray
    actions: np.ndarray
    discrepancy: np.ndarray
    norm: np.ndarray
    config: ScenarioConfig
    stop_reason: str
    component_count: int
    graph: Graph

    @property
    def seed(self) -> int:
        return self.config.master_seed

    @property
    def n_agents(self) -> int:
        return int(self.opinions.shape[1])

    @property
    def step_count(self) -> int:
        return int(self.opinions.shape[0] - 1)

    @property
    def final_opinions(self) -> np.ndarray:
        return self.opinions[-1]

    @property
    def final_actions(self) -> np.ndarray:
        return self.actions[-1]

    @property
    def final_discrepancy(self) -> np.ndarray:
        return self.discrepancy[-1]

    def flexible_mask(self) -> np.ndarray | None:
        """True for non-minority agents; None when the scenario has no minority."""
        if self.config.minority is None:
            return None
        mask = np.ones(self.n_agents, dtype=bool)
        mask[: self.config.minority_size()] = False
        return mask


def run(config: ScenarioConfig) -> Trajectory:
    """Simulate ``config.horizon`` steps (or fewer on early convergence).

    With ``convergence_tol > 0`` the loop stops at the first step where no
    opinion or action moved by ``convergence_tol`` or more.
    """
    population, graph = build_population(config)
    n, horizon = config.n, config.horizon
    opinions = np.empty((horizon + 1, n))
    actions = np.empty((horizon + 1, n))
    opinions[0] = population.opinions
    actions[0] = population.actions

    stop_reason = "horizon"
    recorded = horizon
    for t in range(1, horizon + 1):
        successor = step(population, graph)
        opinions[t] = successor.opinions
        actions[t] = successor.actions
        if config.convergence_tol > 0.0:
            delta = max(
                np.abs(successor.opinions - population.opinions).max(),
                np.abs(successor.actions - population.actions).max(),
            )
            if delta < config.convergence_tol:
                stop_reason = "converged"
                recorded = t
                population = successor
                break
        population = successor
    opinions = opinions[: recorded + 1].copy()
    actions = actions[: recorded + 1].copy()

    return Trajectory(
        opinions=opinions,
        actions=actions,
        discrepancy=np.abs(opinions - actions),
        norm=actions.mean(axis=1),
        config=config,
        stop_reason=stop_reason,
        component_count=graph.component_count(),
        graph=graph,
    )
