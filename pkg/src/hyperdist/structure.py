"""Pendant structure of hypertrees.

A pendant path is identified by its edge sequence ``e_1..e_ell``; its start
``v_1`` is reported as the lowest-index degree-1 vertex of ``e_1`` other than
``v_2``. Any degree-1 vertex of ``e_1`` could serve, and counting them all
would multiply every count by ``r - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Hypergraph, HypergraphError, components, validate_hypertree


@dataclass(frozen=True)
class PendantPath:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]  # v_1 .. v_{ell+1}

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def anchor(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class PendantPathReport:
    ell: int
    paths: tuple[PendantPath, ...]

    @property
    def count(self) -> int:
        return len(self.paths)

    def to_json_obj(self) -> dict:
        return {
            "ell": self.ell,
            "count": self.count,
            "paths": [{"edges": list(p.edges), "start": p.start, "anchor": p.anchor} for p in self.paths],
        }


@dataclass(frozen=True)
class PendantElements:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def pendant_elements(G: Hypergraph) -> PendantElements:
    deg = G.degrees
    pv = tuple(v for v in range(G.n) if deg[v] == 1)
    pe = []
    for i, e in enumerate(G.edges):
        heavy = [v for v in e if deg[v] >= 2]
        if len(heavy) == 1:
            pe.append(i)
    return PendantElements(pv, tuple(pe))


def _require_hypertree(G: Hypergraph) -> None:
    if not validate_hypertree(G).is_hypertree:
        raise HypergraphError("operation requires a hypertree")


def count_pendant_paths(G: Hypergraph, ell: int) -> PendantPathReport:
    """All pendant paths of length ``ell`` in the hypertree ``G``.

    Every such path starts with an edge that has exactly one vertex of
    degree >= 2; from there the walk is forced, so each start edge yields at
    most one path.
    """
    if ell < 1:
        raise HypergraphError(f"pendant path length must be >= 1, got {ell}")
    _require_hypertree(G)
    deg = G.degrees
    found = []
    for first, e in enumerate(G.edges):
        heavy = [v for v in e if deg[v] >= 2]
        if len(heavy) != 1:
            continue
        x = heavy[0]
        start = min(v for v in e if v != x)
        edge_seq = [first]
        verts = [start, x]
        cur = first
        ok = True
        while len(edge_seq) < ell:
            if deg[x] != 2:
                ok = False
                break
            nxt = next(i for i in G.incidence[x] if i != cur)
            others = [v for v in G.edges[nxt] if v != x and deg[v] >= 2]
            if len(others) != 1:
                ok = False
                break
            cur = nxt
            x = others[0]
            edge_seq.append(cur)
            verts.append(x)
        if ok and deg[x] >= 2:
            found.append(PendantPath(tuple(edge_seq), tuple(verts)))
    return PendantPathReport(ell, tuple(found))


@dataclass(frozen=True)
class BranchDecomposition:
    anchor: int
    branches: tuple[frozenset[int], ...]
    branch_edges: tuple[frozenset[int], ...]
    first_edges: tuple[int, ...]  # the edge at the anchor opening each branch

    def branch_containing(self, v: int) -> int:
        for i, b in enumerate(self.branches):
            if v in b and v != self.anchor:
                return i
        raise HypergraphError(f"vertex {v} is not in any branch at {self.anchor}")


def branches_at(T: Hypergraph, u: int) -> BranchDecomposition:
    """One branch per edge at ``u``: the component of ``T`` minus ``u``'s other
    edges that contains that edge, with ``u`` kept as a pendant vertex."""
    T._check_vertex(u)
    _require_hypertree(T)
    at_u = T.incidence[u]
    if not at_u:
        raise HypergraphError(f"vertex {u} has degree 0")
    branches, bedges = [], []
    for e in at_u:
        kept = [f for i, f in enumerate(T.edges) if i == e or i not in at_u]
        idx = [i for i in range(T.m) if i == e or i not in at_u]
        part = components(T.n, kept)
        label = part.labels[u]
        verts = part.members(label)
        branches.append(verts)
        bedges.append(frozenset(i for i, f in zip(idx, kept) if part.labels[f[0]] == label))
    return BranchDecomposition(u, tuple(branches), tuple(bedges), tuple(at_u))


def is_power_hypertree(G: Hypergraph, r: int) -> bool:
    """True iff ``G`` is an r-uniform hypertree whose every edge has at most
    two vertices of degree >= 2."""
    if G.m == 0 or not G.is_uniform(r) or not validate_hypertree(G).is_hypertree:
        return False
    deg = G.degrees
    return all(sum(1 for v in e if deg[v] >= 2) <= 2 for e in G.edges)
