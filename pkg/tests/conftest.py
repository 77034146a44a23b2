import networkx as nx
import pytest
from hypothesis import settings, strategies as st

from hyperdist.constructions import TreeSkeleton, power_of_tree
from hyperdist.enumeration import random_tree
from hyperdist.harness import Solver

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


def spider(*legs: int) -> TreeSkeleton:
    """Tree with one center and a path of each given length hanging from it."""
    edges, n = [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return TreeSkeleton.from_edges(n, edges)


def path_tree(n: int) -> TreeSkeleton:
    return TreeSkeleton.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def relabel(T: TreeSkeleton, perm) -> TreeSkeleton:
    return TreeSkeleton.from_edges(T.n, [(perm[a], perm[b]) for a, b in T.edges])


def to_nx(T: TreeSkeleton) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(T.n))
    g.add_edges_from(T.edges)
    return g


@st.composite
def power_hypertrees(draw, m_min=1, m_max=8, rs=(3, 4, 5)):
    m = draw(st.integers(m_min, m_max))
    r = draw(st.sampled_from(rs))
    seed = draw(st.integers(0, 2**32 - 1))
    T = random_tree(m + 1, seed)
    return T, power_of_tree(T, r)[0], r


@pytest.fixture(scope="session")
def solver():
    return Solver()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
