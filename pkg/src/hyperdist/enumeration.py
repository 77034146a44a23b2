"""Free-tree enumeration, canonical codes and class filtering.

Isomorphism of power hypertrees is decided on their skeletons: the power
construction depends only on the tree, so two powers are isomorphic iff the
underlying trees are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np

from .constructions import TreeSkeleton, power_of_tree
from .core import Hypergraph, HypergraphError
from .structure import count_pendant_paths

DEFAULT_CAP = 13


class EnumerationCapError(HypergraphError):
    pass


def tree_centers(T: TreeSkeleton) -> list[int]:
    """One or two central vertices, found by repeatedly stripping leaves."""
    if T.n <= 2:
        return list(range(T.n))
    adj = T.adjacency
    deg = [len(a) for a in adj]
    layer = [v for v in range(T.n) if deg[v] == 1]
    remaining = T.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in adj[leaf]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_code(adj: list[list[int]], root: int) -> str:
    """AHU code of the tree rooted at ``root``: "(" + sorted child codes + ")"."""
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    code: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(code[w] for w in adj[v] if w != parent[v])
        code[v] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_code(T: TreeSkeleton) -> str:
    """Relabeling-invariant code; equal codes iff isomorphic trees."""
    adj = T.adjacency
    return min(rooted_code(adj, c) for c in tree_centers(T))


def tree_from_code(code: str) -> TreeSkeleton:
    """Rebuild a tree from a rooted code, numbering vertices in preorder."""
    edges = []
    stack: list[int] = []
    n = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        else:
            stack.pop()
    return TreeSkeleton.from_edges(n, edges)


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("()",)
    out = set()
    for code in _codes(n - 1):
        T = tree_from_code(code)
        for v in range(T.n):
            grown = TreeSkeleton.from_edges(T.n + 1, list(T.edges) + [(v, T.n)])
            out.add(canonical_code(grown))
    return tuple(sorted(out))


def enumerate_free_trees(n: int, cap: int = DEFAULT_CAP) -> list[TreeSkeleton]:
    """One tree per isomorphism class on ``n`` vertices, sorted by canonical code.

    Trees are grown leaf by leaf from the classes on ``n - 1`` vertices (every
    tree arises from a smaller one by adding a leaf) and deduplicated by code.
    """
    if n < 1:
        raise HypergraphError(f"need n >= 1, got {n}")
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds enumeration cap {cap}")
    return [tree_from_code(c) for c in _codes(n)]


@dataclass(frozen=True)
class ClassDescriptor:
    m: int
    r: int
    ell: int
    k: int

    def __post_init__(self):
        if self.m < 1 or self.r < 2 or self.ell < 1 or self.k < 0:
            raise HypergraphError(f"invalid class parameters {self}")

    @property
    def two_paths_max(self) -> bool:
        return self.r >= 3 and self.k == 2 and 1 <= self.ell <= self.m - 1

    @property
    def balanced_max(self) -> bool:
        return self.r >= 3 and self.k >= 3 and self.k * self.ell < self.m

    @property
    def single_path_max(self) -> bool:
        return self.r >= 3 and self.k == 1 and 2 <= self.ell <= self.m - 2

    @property
    def star_min(self) -> bool:
        k, ell, m = self.k, self.ell, self.m
        return self.r >= 3 and ((k == 1 and 2 <= ell <= m - 2) or (k >= 2 and ell >= 2 and k * ell <= m - 1))

    @property
    def pendant_edges_max(self) -> bool:
        return self.r >= 3 and self.ell == 1 and 2 <= self.k < self.m

    def applicable(self) -> dict[str, bool]:
        return {
            "two_paths_max": self.two_paths_max,
            "balanced_max": self.balanced_max,
            "single_path_max": self.single_path_max,
            "pendant_edges_max": self.pendant_edges_max,
            "star_min": self.star_min,
        }

    @property
    def label(self) -> str:
        return f"m={self.m},r={self.r},ell={self.ell},k={self.k}"


def enumerate_class(c: ClassDescriptor, cap: int = DEFAULT_CAP) -> list[tuple[TreeSkeleton, Hypergraph]]:
    """All r-th power hypertrees with m edges having exactly k pendant paths of length ell."""
    out = []
    for T in enumerate_free_trees(c.m + 1, cap):
        H, _ = power_of_tree(T, c.r)
        if count_pendant_paths(H, c.ell).count == c.k:
            out.append((T, H))
    return out


def random_tree(n: int, seed: int) -> TreeSkeleton:
    """Uniform random labeled tree on ``n`` vertices, decoded from a seeded Pruefer sequence."""
    if n < 2:
        raise HypergraphError(f"random_tree needs n >= 2, got {n}")
    if n == 2:
        return TreeSkeleton.from_edges(2, [(0, 1)])
    rng = np.random.default_rng(seed)
    seq = [int(v) for v in rng.integers(0, n, size=n - 2)]
    g = nx.from_prufer_sequence(seq)
    return TreeSkeleton.from_edges(n, sorted(tuple(sorted(e)) for e in g.edges()))
