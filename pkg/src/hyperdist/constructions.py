"""Builders for loose paths, tree powers, the D and S families, and the
attach/move operators used to compare spectral radii.

Labeling convention for every builder: skeleton vertices first (central
path, then attached paths in order), degree-1 fillers last, in edge order.
Each builder returns the hypergraph together with a :class:`Labeling` that
names the roles of the vertices and edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Hypergraph, HypergraphError, components, from_edge_list


class ConstructionError(HypergraphError):
    """Raised when construction parameters violate their preconditions."""


@dataclass(frozen=True)
class TreeSkeleton:
    """An ordinary tree on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ConstructionError("a tree needs at least one vertex")
        if len(self.edges) != self.n - 1:
            raise ConstructionError(f"a tree on {self.n} vertices needs {self.n - 1} edges, got {len(self.edges)}")
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ConstructionError(f"bad tree edge ({u}, {v})")
        if components(self.n, self.edges).count != 1:
            raise ConstructionError("tree edges do not form a connected graph")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "TreeSkeleton":
        return cls(n, tuple(tuple(sorted((int(u), int(v)))) for u, v in edges))

    @property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]


@dataclass
class Labeling:
    """Role names for vertices and edges of a construction."""

    vertices: dict[str, int] = field(default_factory=dict)
    edges: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, role: str) -> int:
        return self.vertices[role]

    def __contains__(self, role: str) -> bool:
        return role in self.vertices


class _Builder:
    """Accumulates skeleton vertices and r-edges; fillers are numbered last."""

    def __init__(self, r: int):
        self.r = r
        self.nskel = 0
        self.pairs: list[tuple[int, int]] = []
        self.label = Labeling()
        self._edge_roles: list[str | None] = []
        self._filler_roles: list[str | None] = []

    def vertex(self, role: str | None = None) -> int:
        v = self.nskel
        self.nskel += 1
        if role is not None:
            self.label.vertices[role] = v
        return v

    def edge(self, a: int, b: int, role: str | None = None, filler_role: str | None = None) -> None:
        self.pairs.append((a, b))
        self._edge_roles.append(role)
        self._filler_roles.append(filler_role)

    def path(self, start: int, length: int, prefix: str) -> None:
        """Pendant path of ``length`` edges hanging at ``start``.

        Roles: ``{prefix}u{i}`` for i = 1..length with u1 the pendant end,
        ``{prefix}e{i}`` the edge joining u_i and u_{i+1}, ``{prefix}w{i}`` a
        filler of that edge; u_{length+1} is ``start``.
        """
        us = [self.vertex(f"{prefix}u{i}") for i in range(1, length + 1)] + [start]
        for i in range(1, length + 1):
            self.edge(us[i - 1], us[i], f"{prefix}e{i}", f"{prefix}w{i}")

    def build(self) -> tuple[Hypergraph, Labeling]:
        nfill = self.r - 2
        n = self.nskel + nfill * len(self.pairs)
        edges = []
        for i, (a, b) in enumerate(self.pairs):
            fill = list(range(self.nskel + i * nfill, self.nskel + (i + 1) * nfill))
            edges.append([a, b, *fill])
            if self._edge_roles[i] is not None:
                self.label.edges[self._edge_roles[i]] = i
            if self._filler_roles[i] is not None and fill:
                self.label.vertices[self._filler_roles[i]] = fill[0]
        return from_edge_list(n, edges), self.label


def loose_path(m: int, r: int) -> tuple[Hypergraph, Labeling]:
    """P_{m,r}: roles v1..v{m+1}, e1..em, and fillers w1..wm (first filler of e_i)."""
    if m < 1 or r < 2:
        raise ConstructionError(f"loose_path needs m >= 1 and r >= 2, got m={m}, r={r}")
    b = _Builder(r)
    vs = [b.vertex(f"v{i}") for i in range(1, m + 2)]
    for i in range(1, m + 1):
        b.edge(vs[i - 1], vs[i], f"e{i}", f"w{i}")
    return b.build()


def power_of_tree(T: TreeSkeleton, r: int) -> tuple[Hypergraph, Labeling]:
    """r-th power of a tree: every tree edge gains r-2 fresh degree-1 vertices.

    Tree vertex ``i`` keeps index ``i`` (role ``t{i}``); tree edge ``j`` becomes
    edge ``j`` of the hypergraph (role ``e{j}``, first filler ``w{j}``).
    """
    if r < 2:
        raise ConstructionError(f"power_of_tree needs r >= 2, got {r}")
    b = _Builder(r)
    for i in range(T.n):
        b.vertex(f"t{i}")
    for j, (u, v) in enumerate(T.edges):
        b.edge(u, v, f"e{j}", f"w{j}")
    return b.build()


def tree_to_hypergraph(T: TreeSkeleton) -> Hypergraph:
    return from_edge_list(T.n, T.edges)


def skeleton_of(H: Hypergraph) -> tuple[TreeSkeleton, list[int]]:
    """Recover the tree whose power is ``H``.

    Keeps every vertex of degree >= 2; an edge with fewer than two such
    vertices keeps its lowest-index degree-1 vertices to make up two.
    Returns the skeleton and the list mapping skeleton index -> vertex of H.
    """
    from .structure import is_power_hypertree

    r = H.uniformity
    if r is None or not is_power_hypertree(H, r):
        raise ConstructionError("hypergraph is not a power hypertree")
    deg = H.degrees
    keep = {v for v in range(H.n) if deg[v] >= 2}
    pairs = []
    for e in H.edges:
        junctions = [v for v in e if deg[v] >= 2]
        spare = [v for v in e if deg[v] == 1]
        chosen = junctions + spare[: 2 - len(junctions)]
        keep.update(chosen)
        pairs.append(chosen)
    order = sorted(keep)
    index = {v: i for i, v in enumerate(order)}
    return TreeSkeleton.from_edges(len(order), [(index[a], index[b]) for a, b in pairs]), order


def construct_D(m: int, a: int, b: int, ell: int, r: int) -> tuple[Hypergraph, Labeling]:
    """D_{r,ell}(m,a,b): a loose path v1..vt with a pendant paths of length
    ``ell`` at v1 and b at vt, where t = m - ell*(a+b) + 1.

    Roles: ``v{i}``, ``e{i}``, ``w{i}`` on the central path; ``L{j}.u{i}`` etc.
    for the j-th path at v1 and ``R{j}.*`` for the j-th path at vt.
    """
    if not (1 <= a <= b and ell >= 1 and r >= 3 and ell * (a + b) <= m - 1):
        raise ConstructionError(
            f"construct_D needs 1 <= a <= b, ell >= 1, ell*(a+b) <= m-1, r >= 3; got m={m}, a={a}, b={b}, ell={ell}, r={r}"
        )
    t = m - ell * (a + b) + 1
    bld = _Builder(r)
    vs = [bld.vertex(f"v{i}") for i in range(1, t + 1)]
    for i in range(1, t):
        bld.edge(vs[i - 1], vs[i], f"e{i}", f"w{i}")
    for j in range(1, a + 1):
        bld.path(vs[0], ell, f"L{j}.")
    for j in range(1, b + 1):
        bld.path(vs[-1], ell, f"R{j}.")
    return bld.build()


def construct_S(m: int, k: int, ell: int, r: int) -> tuple[Hypergraph, Labeling]:
    """S_{r,ell}(m,k): k pendant paths of length ``ell`` and m - k*ell pendant
    edges at a common center ``c``.

    Roles: ``c``; ``P{j}.u{i}``, ``P{j}.e{i}``, ``P{j}.w{i}`` for the paths;
    ``E{j}.u1`` and ``E{j}.e1`` for the pendant edges.
    """
    ok = (k == 1 and 2 <= ell <= m - 2) or (k >= 2 and ell >= 2 and k * ell <= m - 1)
    if not ok or r < 3:
        raise ConstructionError(f"construct_S parameters out of range: m={m}, k={k}, ell={ell}, r={r}")
    bld = _Builder(r)
    c = bld.vertex("c")
    for j in range(1, k + 1):
        bld.path(c, ell, f"P{j}.")
    for j in range(1, m - k * ell + 1):
        bld.path(c, 1, f"E{j}.")
    return bld.build()


def attach_pendant_paths(G: Hypergraph, v: int, p: int, q: int, r: int) -> Hypergraph:
    """G(v,p,q): attach two pendant r-uniform paths of lengths p and q at v.

    New vertices are appended after the existing ones: first path p (walking
    away from v, each edge adds r-1 vertices), then path q. ``q = 0`` (or
    ``p = 0``) attaches a single path.
    """
    G._check_vertex(v)
    if p < 0 or q < 0 or r < 2:
        raise ConstructionError(f"bad attach parameters p={p}, q={q}, r={r}")
    edges = [list(e) for e in G.edges]
    n = G.n
    for length in (p, q):
        prev = v
        for _ in range(length):
            new = list(range(n, n + r - 1))
            n += r - 1
            edges.append([prev, *new])
            prev = new[0]
    return from_edge_list(n, edges)


def move_edges(G: Hypergraph, source: int, target: int, which: Iterable[int]) -> Hypergraph:
    """Move edges ``which`` from ``source`` to ``target``: e -> (e - {source}) + {target}.

    Edge indices are kept; the vertex set is unchanged.
    """
    G._check_vertex(source)
    G._check_vertex(target)
    which = sorted(set(which))
    problems = []
    existing = {frozenset(e) for e in G.edges}
    new_edges = [list(e) for e in G.edges]
    created = set()
    for i in which:
        if not 0 <= i < G.m:
            problems.append(f"edge {i}: index out of range")
            continue
        e = G.edges[i]
        if source not in e:
            problems.append(f"edge {i}: does not contain {source}")
            continue
        if target in e:
            problems.append(f"edge {i}: already contains {target}")
            continue
        moved = frozenset(e) - {source} | {target}
        if moved in existing or moved in created:
            problems.append(f"edge {i}: moved edge {sorted(moved)} already present")
            continue
        created.add(moved)
        new_edges[i] = sorted(moved)
    if problems:
        raise ConstructionError("; ".join(problems))
    return from_edge_list(G.n, new_edges)
