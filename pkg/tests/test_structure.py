import pytest
from hypothesis import given, strategies as st

from hyperdist.constructions import construct_D, construct_S, loose_path, power_of_tree
from hyperdist.core import HypergraphError, from_edge_list
from hyperdist.enumeration import enumerate_free_trees
from hyperdist.structure import branches_at, count_pendant_paths, is_power_hypertree, pendant_elements
from conftest import power_hypertrees, spider


def skeleton_pendant_count(T, ell):
    """Leaves from which ell tree steps through degree-2 vertices reach a vertex of degree >= 2."""
    adj, deg = T.adjacency, T.degrees
    count = 0
    for leaf in range(T.n):
        if deg[leaf] != 1:
            continue
        prev, cur, ok = leaf, adj[leaf][0], True
        for _ in range(ell - 1):
            if deg[cur] != 2:
                ok = False
                break
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
        if ok and deg[cur] >= 2:
            count += 1
    return count


def test_pendant_elements():
    single = pendant_elements(from_edge_list(3, [{0, 1, 2}]))
    assert len(single.vertices) == 3 and single.edges == ()
    p = pendant_elements(loose_path(2, 3)[0])
    assert len(p.vertices) == 4 and len(p.edges) == 2
    S, lab = construct_S(5, 2, 2, 3)
    pe = pendant_elements(S).edges
    # the outer edge of each leg is pendant too; only one pendant edge sits at the center
    assert len(pe) == 3
    assert [e for e in pe if lab["c"] in S.edges[e]] == [lab.edges["E1.e1"]]


def test_pendant_path_examples():
    assert count_pendant_paths(loose_path(4, 3)[0], 2).count == 2
    S = construct_S(5, 2, 2, 3)[0]
    assert count_pendant_paths(S, 1).count == 3
    assert count_pendant_paths(S, 2).count == 2
    assert count_pendant_paths(power_of_tree(spider(1, 1, 3), 3)[0], 2).count == 1


def test_pendant_path_report_fields():
    H, lab = loose_path(3, 3)
    rep = count_pendant_paths(H, 1)
    assert {p.anchor for p in rep.paths} == {lab["v2"], lab["v3"]}
    obj = rep.to_json_obj()
    assert obj["ell"] == 1 and obj["count"] == 2 and len(obj["paths"]) == 2


def test_pendant_path_invariants_exhaustive():
    for n in range(2, 9):
        for T in enumerate_free_trees(n):
            H = power_of_tree(T, 3)[0]
            deg = H.degrees
            for ell in range(1, n):
                rep = count_pendant_paths(H, ell)
                assert rep.count == skeleton_pendant_count(T, ell)
                for p in rep.paths:
                    vs = p.vertices
                    assert deg[vs[0]] == 1 and deg[vs[-1]] >= 2
                    assert all(deg[v] == 2 for v in vs[1:-1])
                    for i, e in enumerate(p.edges):
                        assert all(deg[w] == 1 for w in set(H.edges[e]) - {vs[i], vs[i + 1]})


def test_pendant_paths_reject_non_hypertree():
    cycle = from_edge_list(6, [{0, 1, 2}, {2, 3, 4}, {4, 5, 0}])
    with pytest.raises(HypergraphError):
        count_pendant_paths(cycle, 1)
    with pytest.raises(HypergraphError):
        count_pendant_paths(loose_path(2, 3)[0], 0)


def test_branch_examples():
    S, lab = construct_S(5, 2, 2, 3)
    br = branches_at(S, lab["c"])
    assert sorted(len(e) for e in br.branch_edges) == [1, 2, 2]
    P, plab = loose_path(4, 3)
    br = branches_at(P, plab["v1"])
    assert br.branches == (frozenset(range(P.n)),)
    D, dlab = construct_D(4, 1, 2, 1, 3)
    assert len(branches_at(D, dlab["v2"]).branches) == 3


@given(power_hypertrees(), st.data())
def test_branch_decomposition_invariants(data, draw):
    _, H, _ = data
    u = draw.draw(st.integers(0, H.n - 1))
    br = branches_at(H, u)
    assert len(br.branches) == H.degree(u)
    union = set().union(*br.branches)
    assert union == set(range(H.n))
    for i in range(len(br.branches)):
        for j in range(i + 1, len(br.branches)):
            assert br.branches[i] & br.branches[j] == {u}
    assert sum(len(e) for e in br.branch_edges) == H.m


def test_is_power_hypertree():
    for T in enumerate_free_trees(7):
        assert is_power_hypertree(power_of_tree(T, 4)[0], 4)
    assert is_power_hypertree(loose_path(5, 6)[0], 6)
    witness = from_edge_list(9, [{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}])
    assert not is_power_hypertree(witness, 3)
    assert not is_power_hypertree(loose_path(3, 3)[0], 4)
    assert not is_power_hypertree(from_edge_list(4, [{0, 1, 2}, {0, 1, 3}]), 3)
