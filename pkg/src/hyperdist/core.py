"""Immutable hypergraph values and structural queries.

Vertices are dense integer indices ``0..n-1``. Distances are shortest loose
path lengths, computed by breadth-first search on the clique expansion
(every edge acts as a clique), which works for any hypergraph, not only
power hypertrees.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs and out-of-range queries."""


class DisconnectedError(HypergraphError):
    """Raised when a query needs vertices in one component."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...]

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices containing each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    @cached_property
    def isolated(self) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.degrees) if d == 0)

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or None if edges differ in size (or no edges)."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_uniform(self, r: int) -> bool:
        return all(len(e) == r for e in self.edges)

    def degree(self, u: int) -> int:
        self._check_vertex(u)
        return self.degrees[u]

    def neighbors(self, u: int) -> frozenset[int]:
        self._check_vertex(u)
        out: set[int] = set()
        for i in self.incidence[u]:
            out.update(self.edges[i])
        out.discard(u)
        return frozenset(out)

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise HypergraphError(f"vertex {u} out of range 0..{self.n - 1}")

    def bfs(self, source: int) -> np.ndarray:
        """Distances from ``source``; -1 marks unreachable vertices."""
        self._check_vertex(source)
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[source] = 0
        seen_edges = bytearray(self.m)
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for i in self.incidence[u]:
                if seen_edges[i]:
                    continue
                seen_edges[i] = 1
                for w in self.edges[i]:
                    if dist[w] < 0:
                        dist[w] = du
                        queue.append(w)
        return dist

    @cached_property
    def all_distances(self) -> np.ndarray:
        """All-pairs distance table (read-only); -1 where unreachable."""
        table = np.stack([self.bfs(u) for u in range(self.n)]) if self.n else np.zeros((0, 0), dtype=np.int64)
        table.flags.writeable = False
        return table

    def distance(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        d = int(self.all_distances[u, v])
        if d < 0:
            raise DisconnectedError(f"vertices {u} and {v} lie in different components")
        return d

    @cached_property
    def is_connected(self) -> bool:
        return self.n > 0 and components(self.n, self.edges).count == 1

    def to_json_obj(self) -> dict:
        """Canonical on-disk form: sorted vertex lists, edges sorted lexicographically."""
        return {"n": self.n, "edges": sorted(list(e) for e in self.edges)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={[list(e) for e in self.edges]})"


def from_edge_list(n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and build a hypergraph.

    Each edge is stored as a sorted tuple; edge order is preserved so edge
    indices stay meaningful to the caller.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise HypergraphError(f"vertex count must be a nonnegative integer, got {n!r}")
    n = int(n)
    out = []
    seen = set()
    for i, e in enumerate(edges):
        verts = [int(v) for v in e]
        s = frozenset(verts)
        if len(s) != len(verts):
            raise HypergraphError(f"edge {i} repeats a vertex: {verts}")
        if len(s) < 2:
            raise HypergraphError(f"edge {i} has fewer than 2 vertices: {verts}")
        bad = [v for v in verts if not 0 <= v < n]
        if bad:
            raise HypergraphError(f"edge {i} has vertex out of range 0..{n - 1}: {bad}")
        if s in seen:
            raise HypergraphError(f"duplicate edge {sorted(s)}")
        seen.add(s)
        out.append(tuple(sorted(s)))
    return Hypergraph(n, tuple(out))


def from_json(text: str | dict) -> Hypergraph:
    obj = json.loads(text) if isinstance(text, str) else text
    try:
        return from_edge_list(obj["n"], obj["edges"])
    except (KeyError, TypeError) as exc:
        raise HypergraphError(f"malformed hypergraph JSON: {exc}") from exc


@dataclass(frozen=True)
class ComponentPartition:
    labels: tuple[int, ...]
    count: int

    def members(self, label: int) -> frozenset[int]:
        return frozenset(v for v, c in enumerate(self.labels) if c == label)

    def component_of(self, v: int) -> frozenset[int]:
        return self.members(self.labels[v])

    @property
    def sizes(self) -> list[int]:
        return [self.labels.count(c) for c in range(self.count)]


def components(n: int, edges: Sequence[Sequence[int]]) -> ComponentPartition:
    """Connected components of the hypergraph on ``n`` vertices with ``edges``.

    Labels are assigned in order of each component's smallest vertex.
    """
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        root = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != root:
                parent[rv] = root
    relabel: dict[int, int] = {}
    labels = []
    for v in range(n):
        labels.append(relabel.setdefault(find(v), len(relabel)))
    return ComponentPartition(tuple(labels), len(relabel))


def components_after_edge_removal(G: Hypergraph, e: int) -> ComponentPartition:
    if not 0 <= e < G.m:
        raise HypergraphError(f"edge index {e} out of range 0..{G.m - 1}")
    return components(G.n, [f for i, f in enumerate(G.edges) if i != e])


@dataclass(frozen=True)
class HypertreeValidity:
    connected: bool
    linear: bool
    acyclic: bool
    is_hypertree: bool
    isolated: tuple[int, ...] = field(default=())


def validate_hypertree(G: Hypergraph) -> HypertreeValidity:
    """Check connectivity, linearity and acyclicity.

    ``acyclic`` means the vertex-edge incidence graph is a forest, i.e.
    ``sum(|e| - 1) == n - components``. A hypertree is connected, linear
    (edges pairwise share at most one vertex) and has ``sum(|e| - 1) == n - 1``.
    """
    part = components(G.n, G.edges)
    connected = G.n > 0 and part.count == 1
    linear = True
    for i, e in enumerate(G.edges):
        se = set(e)
        for f in G.edges[i + 1:]:
            if len(se.intersection(f)) > 1:
                linear = False
                break
        if not linear:
            break
    excess = sum(len(e) - 1 for e in G.edges)
    acyclic = excess == G.n - part.count
    return HypertreeValidity(
        connected=connected,
        linear=linear,
        acyclic=acyclic,
        is_hypertree=connected and linear and excess == G.n - 1,
        isolated=G.isolated,
    )


def is_hypertree(G: Hypergraph) -> bool:
    return validate_hypertree(G).is_hypertree
