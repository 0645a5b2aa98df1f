"""Undirected simple graphs, the topology generators, and edge-list I/O.

Three generators cover the interaction structures used by the scenarios:
the complete graph, the Watts-Strogatz small-world rewiring construction,
and Barabasi-Albert preferential attachment. Both random generators take an
explicit seeded generator and are fully deterministic given (params, seed).
"""

from __future__ import annotations

import itertools
from typing import IO, Iterable

import numpy as np

from .errors import ConfigurationError, ParseError


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, (int, np.integer, np.random.SeedSequence)):
        return np.random.default_rng(rng)
    raise ConfigurationError("rng must be a numpy Generator, SeedSequence, or integer seed")


class Graph:
    """Immutable undirected simple graph over node ids ``0..node_count-1``.

    Edges are canonical ``(u, v)`` pairs with ``u < v``; self-loops and
    duplicates are rejected. The dense adjacency matrix (diagonal False) is
    built lazily and cached, so adjacency queries are cheap and safe from
    any number of readers.
    """

    __slots__ = ("node_count", "_edges", "_adjacency")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(node_count, (int, np.integer)) or node_count < 1:
            raise ConfigurationError(f"node_count must be a positive integer, got {node_count!r}")
        n = int(node_count)
        canonical = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ConfigurationError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ConfigurationError(f"edge ({u}, {v}) endpoint outside 0..{n - 1}")
            pair = (u, v) if u < v else (v, u)
            if pair in canonical:
                raise ConfigurationError(f"duplicate edge ({pair[0]}, {pair[1]})")
            canonical.add(pair)
        object.__setattr__(self, "node_count", n)
        object.__setattr__(self, "_edges", frozenset(canonical))
        object.__setattr__(self, "_adjacency", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        pair = (u, v) if u < v else (v, u)
        return pair in self._edges

    def adjacency_matrix(self) -> np.ndarray:
        """Boolean (n, n) adjacency with a False diagonal; cached, read-only."""
        if self._adjacency is None:
            adj = np.zeros((self.node_count, self.node_count), dtype=bool)
            for u, v in self._edges:
                adj[u, v] = adj[v, u] = True
            adj.setflags(write=False)
            object.__setattr__(self, "_adjacency", adj)
        return self._adjacency

    def degrees(self) -> np.ndarray:
        counts = np.zeros(self.node_count, dtype=int)
        for u, v in self._edges:
            counts[u] += 1
            counts[v] += 1
        return counts

    def max_degree(self) -> int:
        return int(self.degrees().max(initial=0))

    def component_count(self) -> int:
        parent = list(range(self.node_count))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self._edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return sum(1 for i in range(self.node_count) if find(i) == i)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.node_count, self._edges))

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edges={self.edge_count})"


def complete_graph(n: int) -> Graph:
    """The complete graph K_n with n*(n-1)/2 edges."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ConfigurationError(f"complete graph needs a positive node count, got {n!r}")
    return Graph(int(n), itertools.combinations(range(int(n)), 2))


def check_small_world_params(n: int, k: int, p: float) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ConfigurationError(f"k must be an integer, got {k!r}")
    if k < 2:
        raise ConfigurationError(f"k must be at least 2, got {k}")
    if k % 2 != 0:
        raise ConfigurationError(f"k must be even, got {k}")
    if n <= k:
        raise ConfigurationError(f"node count must exceed k, got n={n}, k={k}")
    if not 0.0 <= float(p) <= 1.0:
        raise ConfigurationError(f"rewiring probability must lie in [0, 1], got {p}")


def watts_strogatz(n: int, k: int, p: float, rng) -> Graph:
    """Small-world graph: ring lattice of degree ``k`` with random rewiring.

    Each node first connects to its k/2 nearest neighbors on each side.
    Every lattice edge is visited once and, with probability ``p``, its far
    endpoint is rewired to a uniformly random node; draws that would create
    a self-loop or duplicate edge are rejected and redrawn, and the original
    edge is kept when the source is already connected to everyone else.
    The edge count is therefore exactly n*k/2 for any p.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ConfigurationError(f"node count must be a positive integer, got {n!r}")
    check_small_world_params(int(n), k, p)
    rng = _as_rng(rng)
    n, k, p = int(n), int(k), float(p)

    adjacent: list[set[int]] = [set() for _ in range(n)]
    for j in range(1, k // 2 + 1):
        for i in range(n):
            v = (i + j) % n
            adjacent[i].add(v)
            adjacent[v].add(i)

    for j in range(1, k // 2 + 1):
        for i in range(n):
            if rng.random() >= p:
                continue
            if len(adjacent[i]) >= n - 1:
                continue
            old = (i + j) % n
            w = int(rng.integers(n))
            while w == i or w in adjacent[i]:
                w = int(rng.integers(n))
            adjacent[i].discard(old)
            adjacent[old].discard(i)
            adjacent[i].add(w)
            adjacent[w].add(i)

    edges = [(u, v) for u in range(n) for v in adjacent[u] if u < v]
    return Graph(n, edges)


def check_scale_free_params(n: int, m0: int, m: int) -> None:
    for name, value in (("m0", m0), ("m", m)):
        if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
            raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if m < 1:
        raise ConfigurationError(f"m must be at least 1, got {m}")
    if m0 < m:
        raise ConfigurationError(f"m0 must be at least m, got m0={m0}, m={m}")
    if n < m0:
        raise ConfigurationError(f"node count must be at least m0, got n={n}, m0={m0}")


def barabasi_albert(n: int, m0: int, m: int, rng) -> Graph:
    """Scale-free graph grown by preferential attachment from K_{m0}.

    Nodes ``m0..n-1`` are added one at a time; each connects to ``m``
    distinct existing nodes drawn with probability proportional to current
    degree (duplicate draws are rejected and redrawn). The final edge count
    is exactly m0*(m0-1)/2 + (n-m0)*m.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ConfigurationError(f"node count must be a positive integer, got {n!r}")
    check_scale_free_params(int(n), m0, m)
    rng = _as_rng(rng)
    n, m0, m = int(n), int(m0), int(m)

    edges = list(itertools.combinations(range(m0), 2))
    # One entry per edge endpoint, so uniform draws are degree-proportional.
    attachment_pool: list[int] = [u for e in edges for u in e]

    for source in range(m0, n):
        targets: set[int] = set()
        if not attachment_pool:
            # K_1 start: no degrees to weight yet, attach uniformly.
            while len(targets) < m:
                targets.add(int(rng.integers(source)))
        else:
            while len(targets) < m:
                candidate = attachment_pool[int(rng.integers(len(attachment_pool)))]
                targets.add(candidate)
        for t in sorted(targets):
            edges.append((t, source))
            attachment_pool.append(t)
        attachment_pool.extend([source] * m)

    return Graph(n, edges)


def write_edge_list(graph: Graph, sink: IO[bytes]) -> None:
    """Serialize as UTF-8 text: a node-count header line, then one sorted
    ``u v`` line per edge with u < v."""
    lines = [f"{graph.node_count}\n"]
    for u, v in sorted(graph.edges):
        lines.append(f"{u} {v}\n")
    sink.write("".join(lines).encode("utf-8"))


def read_edge_list(source: IO[bytes]) -> Graph:
    """Parse the edge-list format written by :func:`write_edge_list`.

    Round-trips exactly: same node count, same edge set. Malformed lines,
    out-of-range endpoints, self-loops, and duplicates raise a
    :class:`ParseError` naming the offending line number. Blank lines are
    ignored.
    """
    raw = source.read()
    try:
        text = raw.decode("utf-8") if isinstance(raw, bytes) else str(raw)
    except UnicodeDecodeError as exc:
        raise ParseError(f"edge list is not valid UTF-8: {exc}") from None
    lines = text.split("\n")
    if not lines or not lines[0].strip():
        raise ParseError("line 1: missing node-count header")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"line 1: node-count header is not an integer: {lines[0].strip()!r}") from None
    if n < 1:
        raise ParseError(f"line 1: node count must be positive, got {n}")

    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {stripped!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: endpoints must be integers, got {stripped!r}") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop on node {u}")
        if u > v:
            raise ParseError(f"line {lineno}: endpoints must satisfy u < v, got {u} {v}")
        if not (0 <= u and v < n):
            raise ParseError(f"line {lineno}: endpoint outside 0..{n - 1}")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)
