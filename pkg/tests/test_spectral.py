import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperdist.constructions import construct_D, construct_S, loose_path
from hyperdist.core import DisconnectedError, HypergraphError, from_edge_list
from hyperdist.enumeration import enumerate_free_trees
from hyperdist.constructions import power_of_tree
from hyperdist.spectral import (
    ConvergenceError,
    distance_matrix,
    eigen_residual,
    min_status,
    sigma,
    spectral_radius,
    status,
)
from hyperdist.structure import branches_at
from conftest import power_hypertrees

RHO_P23 = (5 + math.sqrt(41)) / 2


def edge(r):
    return from_edge_list(r, [range(r)])


def test_distance_matrix_examples():
    assert np.array_equal(distance_matrix(edge(4)), np.ones((4, 4), int) - np.eye(4, dtype=int))
    H, lab = loose_path(2, 3)
    order = [lab[k] for k in ("v1", "w1", "v2", "w2", "v3")]
    assert distance_matrix(H)[order][:, order][0].tolist() == [0, 1, 1, 2, 2]
    D = distance_matrix(construct_D(4, 1, 2, 1, 3)[0])
    assert D.shape == (9, 9) and D.max() == 3


def test_distance_matrix_disconnected():
    with pytest.raises(DisconnectedError):
        distance_matrix(from_edge_list(6, [{0, 1, 2}, {3, 4, 5}]))


@pytest.mark.parametrize("r", [3, 4, 5])
def test_single_edge_rho(r):
    res = spectral_radius(edge(r))
    assert abs(res.rho - (r - 1)) <= 1e-10
    assert status(edge(r), 0) == r - 1 == min_status(edge(r))


def test_loose_path_rho_quotient():
    H, lab = loose_path(2, 3)
    res = spectral_radius(H, 1e-12)
    assert abs(res.rho - RHO_P23) <= 1e-9
    # quotient polynomial of the two-cell partition
    assert abs(res.rho ** 2 - 5 * res.rho - 4) <= 1e-8
    outer = [res.perron[lab[k]] for k in ("v1", "w1", "w2", "v3")]
    assert max(outer) - min(outer) <= 1e-9


def test_status_examples():
    H, lab = loose_path(2, 3)
    assert status(H, lab["v2"]) == 4 and status(H, lab["v1"]) == 6 and min_status(H) == 4


def test_sigma_examples():
    G = edge(3)
    x = spectral_radius(G).perron
    assert sigma(G, x, []) == 0
    assert abs(sigma(G, x, range(3)) - math.sqrt(3)) <= 1e-9
    S, lab = construct_S(5, 2, 2, 3)
    xs = spectral_radius(S).perron
    br = branches_at(S, lab["c"])
    part = br.branches[0] - {lab["c"]}
    assert abs(sigma(S, xs, part) + sigma(S, xs, set(range(S.n)) - part) - sigma(S, xs, range(S.n))) <= 1e-12
    with pytest.raises(HypergraphError):
        sigma(G, x, [3])
    with pytest.raises(HypergraphError):
        sigma(G, x[:2], [0])


def test_bad_tolerance_and_cap():
    with pytest.raises(HypergraphError):
        spectral_radius(edge(3), 0)
    with pytest.raises(ConvergenceError) as info:
        spectral_radius(loose_path(6, 3)[0], 1e-15, max_iter=2)
    assert info.value.residual > 0


def test_json_shape():
    obj = spectral_radius(loose_path(2, 3)[0]).to_json_obj()
    assert set(obj) == {"rho", "perron", "iterations", "residual"}
    assert obj["rho"] == float(f"{RHO_P23:.15g}")


def test_agrees_with_dense_eigensolver():
    for n in range(2, 9):
        for T in enumerate_free_trees(n):
            for r in (3, 4):
                H = power_of_tree(T, r)[0]
                res = spectral_radius(H, 1e-12)
                vals, vecs = np.linalg.eigh(distance_matrix(H).astype(float))
                assert abs(res.rho - vals[-1]) <= 1e-9 * vals[-1]
                ref = np.abs(vecs[:, -1])
                assert np.max(np.abs(res.perron - ref)) <= 1e-8


@given(power_hypertrees(m_max=10))
def test_spectral_contract(data):
    _, H, _ = data
    res = spectral_radius(H)
    assert eigen_residual(H, res.rho, res.perron) <= 1e-10 * res.rho
    assert (res.perron > 0).all()
    assert abs(np.linalg.norm(res.perron) - 1) <= 1e-12
    assert res.rho >= min_status(H) - 1e-9
    again = spectral_radius(H)
    assert again.rho == res.rho and np.array_equal(again.perron, res.perron)


@given(power_hypertrees(m_max=8), st.integers(0, 2**32 - 1))
def test_rayleigh_bound(data, seed):
    _, H, _ = data
    res = spectral_radius(H, 1e-12)
    D = distance_matrix(H).astype(float)
    y = np.random.default_rng(seed).random(H.n) + 1e-3
    y /= np.linalg.norm(y)
    assert y @ D @ y <= res.rho * (1 + 1e-12)


def test_orbit_symmetry():
    for m, k, ell in [(5, 2, 2), (7, 3, 2), (9, 2, 3)]:
        S, lab = construct_S(m, k, ell, 3)
        x = spectral_radius(S, 1e-12).perron
        for i in range(1, ell + 1):
            vals = [x[lab[f"P{j}.u{i}"]] for j in range(1, k + 1)]
            assert max(vals) - min(vals) <= 1e-9
    D, lab = construct_D(9, 2, 2, 2, 3)  # t = 2, mirror symmetric
    x = spectral_radius(D, 1e-12).perron
    assert abs(x[lab["v1"]] - x[lab["v2"]]) <= 1e-9
    assert abs(x[lab["L1.u1"]] - x[lab["R2.u1"]]) <= 1e-9


def test_loose_path_is_the_maximum():
    for m in range(1, 9):
        trees = enumerate_free_trees(m + 1)
        rhos = sorted(spectral_radius(power_of_tree(T, 3)[0], 1e-12).rho for T in trees)
        top = spectral_radius(loose_path(m, 3)[0], 1e-12).rho
        assert abs(rhos[-1] - top) <= 1e-9 * top
        if len(rhos) > 1:
            assert rhos[-1] - rhos[-2] > 1e-9 * top
