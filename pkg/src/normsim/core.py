"""Agent state and the per-step update mathematics.

Every agent carries a private opinion ``x`` and a public action ``y``, both
on [0, 1], plus two immutable personality traits: *openness* (the confidence
radius within which observed actions can influence the opinion) and
*commitment* (the weight placed on the own opinion, against the group's mean
action, when choosing the next action).

A synchronous step runs in two phases:

1. opinion fusion -- agent ``i`` averages its own opinion with the actions
   of connected agents whose action lies within ``openness`` of ``x_i``;
2. action choice -- agent ``i`` maximizes the concave quadratic
   ``-phi*(y - x_new)^2 - (1 - phi)*(y - norm)^2``, whose unique maximizer
   is the blend ``phi*x_new + (1 - phi)*norm``.

With full commitment (``phi = 1``) and actions initialized to opinions the
dynamics collapse onto the classical Hegselmann-Krause model;
:func:`classical_hk_step` provides that reference dynamic, coded
independently of the vectorized engine so it can serve as an oracle.

Functions here operate on one agent at a time (or one plain opinion vector)
and are pure; the whole-population vectorized step lives in
:mod:`normsim.engine` and is tested against these definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, ContractViolationError


def _check_unit(name: str, value: float) -> float:
    v = float(value)
    if not np.isfinite(v) or v < 0.0 or v > 1.0:
        raise ContractViolationError(f"{name} must lie in [0, 1], got {value!r}")
    return v


@dataclass(frozen=True)
class AgentState:
    """One agent: private opinion, public action, and two immutable traits."""

    opinion: float
    action: float
    openness: float
    commitment: float

    def __post_init__(self) -> None:
        for name in ("opinion", "action", "openness", "commitment"):
            object.__setattr__(self, name, _check_unit(name, getattr(self, name)))


class Population:
    """Fixed-size agent collection stored as parallel read-only arrays.

    Arrays are copied on construction and frozen; updates produce new
    instances. Index order is stable for the lifetime of a run.
    """

    __slots__ = ("opinions", "actions", "openness", "commitment")

    def __init__(self, opinions, actions, openness, commitment):
        fields = {}
        for name, seq in (
            ("opinions", opinions),
            ("actions", actions),
            ("openness", openness),
            ("commitment", commitment),
        ):
            arr = np.array(seq, dtype=float)
            if arr.ndim != 1:
                raise ContractViolationError(f"{name} must be one-dimensional")
            if not np.all(np.isfinite(arr)) or arr.min(initial=0.0) < 0.0 or arr.max(initial=0.0) > 1.0:
                raise ContractViolationError(f"{name} must lie in [0, 1]")
            arr.setflags(write=False)
            fields[name] = arr
        sizes = {a.size for a in fields.values()}
        if len(sizes) != 1:
            raise ContractViolationError("state arrays must share one length")
        if fields["opinions"].size < 1:
            raise ContractViolationError("population must contain at least one agent")
        for name, arr in fields.items():
            object.__setattr__(self, name, arr)

    @classmethod
    def from_agents(cls, agents: Iterable[AgentState]) -> "Population":
        agents = list(agents)
        return cls(
            [a.opinion for a in agents],
            [a.action for a in agents],
            [a.openness for a in agents],
            [a.commitment for a in agents],
        )

    @property
    def size(self) -> int:
        return int(self.opinions.size)

    def __len__(self) -> int:
        return self.size

    def agent(self, i: int) -> AgentState:
        if not 0 <= i < self.size:
            raise ContractViolationError(f"agent index {i} out of range for n={self.size}")
        return AgentState(
            float(self.opinions[i]),
            float(self.actions[i]),
            float(self.openness[i]),
            float(self.commitment[i]),
        )


@dataclass(frozen=True)
class UtilityTerms:
    """Inputs to the action-choice utility for one agent and one step."""

    updated_opinion: float
    norm: float
    commitment: float

    def __post_init__(self) -> None:
        for name in ("updated_opinion", "norm", "commitment"):
            object.__setattr__(self, name, _check_unit(name, getattr(self, name)))


def neighbor_set(i: int, population: Population, graph, openness: float | None = None) -> set[int]:
    """Indices whose observed action falls inside agent ``i``'s confidence area.

    ``j`` is a neighbor when ``|x_i - y_j| <= openness`` and the graph has an
    edge (i, j); on the complete graph the edge condition is vacuous. The
    comparison is a plain float ``<=``, so the boundary is included. ``i``
    itself is never a member -- its own opinion re-enters the average in
    :func:`update_opinion`.

    ``openness`` defaults to agent ``i``'s own trait.
    """
    n = len(population)
    if not 0 <= i < n:
        raise ContractViolationError(f"agent index {i} out of range for n={n}")
    if graph.node_count != n:
        raise ConfigurationError(
            f"graph covers {graph.node_count} nodes but population has {n} agents"
        )
    eps = float(population.openness[i]) if openness is None else _check_unit("openness", openness)
    within = np.abs(population.opinions[i] - population.actions) <= eps
    mask = within & graph.adjacency_matrix()[i]
    return set(np.flatnonzero(mask).tolist())


def update_opinion(i: int, population: Population, neighbors: Iterable[int]) -> float:
    """Bounded-confidence fusion: mean of the neighbors' actions and the own opinion.

    An empty neighbor set is legal and leaves the opinion unchanged.
    Neighbor actions are summed in ascending index order.
    """
    n = len(population)
    if not 0 <= i < n:
        raise ContractViolationError(f"agent index {i} out of range for n={n}")
    idx = sorted(int(j) for j in neighbors)
    if idx and not (0 <= idx[0] and idx[-1] < n):
        raise ContractViolationError(f"neighbor index out of range for n={n}")
    total = population.actions[idx].sum() + population.opinions[i]
    return float(total / (len(idx) + 1))


def evaluate_utility(candidate_action: float, terms: UtilityTerms) -> float:
    """Payoff of taking ``candidate_action``: minus the commitment-weighted
    squared deviation from the updated opinion, minus the conformity-weighted
    squared deviation from the group norm.

    Always <= 0; equals 0 only when every nonzero-weighted deviation vanishes.
    """
    y = _check_unit("candidate_action", candidate_action)
    phi = terms.commitment
    own = y - terms.updated_opinion
    social = y - terms.norm
    return float(-phi * own * own - (1.0 - phi) * social * social)


def update_action(terms: UtilityTerms) -> float:
    """Closed-form maximizer of the action utility.

    The utility is a concave quadratic whose stationary point is the convex
    blend ``phi*x_new + (1 - phi)*norm``; both inputs lie in [0, 1], so no
    clamping is needed (or performed).
    """
    phi = terms.commitment
    return float(phi * terms.updated_opinion + (1.0 - phi) * terms.norm)


def classical_hk_step(opinions: Sequence[float], epsilon: float, graph) -> list[float]:
    """One synchronous step of the classical bounded-confidence opinion model.

    Each opinion becomes the arithmetic mean of all opinions within
    ``epsilon``, taken over the agent itself plus its graph neighbors.
    Deliberately loop-and-list simple: this is the independent reference
    dynamic for the full-commitment reduction checks, and shares no code
    with the vectorized engine.
    """
    xs = [float(v) for v in opinions]
    n = len(xs)
    if graph.node_count != n:
        raise ConfigurationError(
            f"graph covers {graph.node_count} nodes but {n} opinions were given"
        )
    eps = _check_unit("epsilon", epsilon)
    out = []
    for i in range(n):
        vals = [
            xs[j]
            for j in range(n)
            if (j == i or graph.has_edge(i, j)) and abs(xs[i] - xs[j]) <= eps
        ]
        out.append(sum(vals) / len(vals))
    return out
