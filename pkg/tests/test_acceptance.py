"""Acceptance criteria 1-11, one test each, with the pinned tolerances and runtime limits.

Every criterion records a PASS/FAIL line that is printed in the terminal
summary. All solves share one module-level solver so criterion 11 can audit
every instance touched by criteria 1-10.
"""

import math
import time
from contextlib import contextmanager

from hyperdist import harness
from hyperdist.constructions import construct_D, construct_S, loose_path
from hyperdist.core import from_edge_list
from hyperdist.enumeration import ClassDescriptor, enumerate_class, enumerate_free_trees
from hyperdist.harness import Solver, hypertree_code, verify_extremal
from conftest import ACCEPTANCE_LINES, to_nx
from oracles import bfs_classes, nx_canonical, prufer_classes

SOLVER = Solver(harness.SOLVER_TOL)
MARGIN = 1e-9
FREE_TREE_COUNTS = [1, 1, 2, 3, 6, 11, 23, 47, 106]  # n = 2..10


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        ACCEPTANCE_LINES.append(f"[{number:>2}] {status} {title} ({elapsed:.2f}s, limit {limit:g}s)")
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def campaign_ok(res: harness.CampaignResult) -> bool:
    return res.passed and not res.failures and len(res.reports) > 0


def test_01_exact_eigenvalue_anchors():
    with criterion(1, "exact eigenvalue anchors", 1.0):
        for r in (3, 4, 5):
            rho = SOLVER(from_edge_list(r, [range(r)])).rho
            assert abs(rho - (r - 1)) <= 1e-10
        rho = SOLVER(loose_path(2, 3)[0]).rho
        assert abs(rho - (5 + math.sqrt(41)) / 2) <= 1e-9


def test_02_enumeration_oracle():
    with criterion(2, "free-tree counts n=2..10 match independent exhaustive generation", 10.0):
        for n, expected in zip(range(2, 11), FREE_TREE_COUNTS):
            ours = {nx_canonical(to_nx(T)) for T in enumerate_free_trees(n)}
            assert len(ours) == expected
            assert ours == bfs_classes(n)
            if n <= 7:
                assert ours == prufer_classes(n)


def test_03_joint_desk_check():
    with criterion(3, "class (m=5,r=3,ell=2,k=2): max P_{5,3}, min S_{3,2}(5,2)", 1.0):
        rep = verify_extremal(ClassDescriptor(5, 3, 2, 2), "both", SOLVER, MARGIN)
        assert len(rep.members) == 2
        assert rep.argmax == hypertree_code(loose_path(5, 3)[0])
        assert rep.argmin == hypertree_code(construct_S(5, 2, 2, 3)[0])
        top = rep.rho[rep.argmax]
        assert rep.max_gap > MARGIN * top and rep.min_gap > MARGIN * rep.rho[rep.argmin]
        assert rep.verdicts["two_paths_max"] == rep.verdicts["star_min"] == "pass"


def _all_pass(res, item):
    assert campaign_ok(res)
    assert all(r.verdicts[item] == "pass" for r in res.reports)


def test_04_balanced_D_maximizer():
    with criterion(4, "k>=3 paths: unique maximizer D_{3,ell}(m,floor(k/2),ceil(k/2)), m<=8", 60.0):
        res = harness.theorem_campaign("balanced_max", 8, 3, solver=SOLVER, margin=MARGIN)
        _all_pass(res, "balanced_max")
        for rep in res.reports:
            c = rep.descriptor
            assert c.k >= 3 and c.k * c.ell < c.m
            assert rep.argmax == hypertree_code(construct_D(c.m, c.k // 2, (c.k + 1) // 2, c.ell, 3)[0])


def test_05_single_path_maximizer():
    with criterion(5, "k=1: unique maximizer D_{3,1}(m,1,2) for every 2<=ell<=m-2, m<=8", 60.0):
        res = harness.theorem_campaign("single_path_max", 8, 3, solver=SOLVER, margin=MARGIN)
        _all_pass(res, "single_path_max")
        for rep in res.reports:
            assert rep.argmax == hypertree_code(construct_D(rep.descriptor.m, 1, 2, 1, 3)[0])


def test_06_minimizer_grid():
    with criterion(6, "unique minimizer S_{3,ell}(m,k) on the full admissible grid, m<=8", 60.0):
        res = harness.theorem_campaign("star_min", 8, 3, solver=SOLVER, margin=MARGIN)
        _all_pass(res, "star_min")
        for rep in res.reports:
            c = rep.descriptor
            assert rep.argmin == hypertree_code(construct_S(c.m, c.k, c.ell, 3)[0])


def test_07_pendant_edge_maximizer():
    with criterion(7, "k pendant edges: maximizer D_{3,1}(m,floor(k/2),ceil(k/2)), m<=7, k<m", 60.0):
        res = harness.theorem_campaign("pendant_edges_max", 7, 3, solver=SOLVER, margin=MARGIN)
        _all_pass(res, "pendant_edges_max")
        covered = {(r.descriptor.m, r.descriptor.k) for r in res.reports}
        for m in range(1, 8):
            for k in range(1, m):
                if k == 1:
                    # a tree with more than one edge has >= 2 leaves, each starting a length-1 pendant path
                    assert enumerate_class(ClassDescriptor(m, 3, 1, 1)) == []
                else:
                    assert (m, k) in covered


def test_08_identity_suite():
    with criterion(8, "two-edge identities, residual <= 1e-9, >= 500 configurations", 120.0):
        res = harness.identity_campaign(m_max=6, r=3, n_random=200, solver=SOLVER, margin=MARGIN)
        assert campaign_ok(res)
        assert res.configurations >= 500
        assert sum(r.notes["filler_configurations"] for r in res.reports) > 0
        assert max(c.value for r in res.reports for c in r.checks) <= 1e-9
        assert len(res.reports) == sum(len(enumerate_free_trees(m + 1)) for m in range(1, 7)) + 200


def test_09_perron_structure_suite():
    with criterion(9, "pendant sign, path symmetry (both branches) and D-family chains", 120.0):
        out = harness.perron_campaigns(n_random=100, solver=SOLVER, margin=MARGIN)
        for res in out.values():
            assert campaign_ok(res)
        cases = {r.notes["case"] for r in out["path_symmetry"].reports}
        assert cases == {"equal", "strict"}
        assert sum(r.instance.startswith("seed=") for r in out["pendant_sign"].reports) == 100
        assert sum(r.instance.startswith("mirror") for r in out["path_symmetry"].reports) == 100
        assert sum(r.instance.startswith("random") for r in out["path_symmetry"].reports) == 100
        assert len(out["D_family"].reports) == len(harness.d_family_grid()) + 100
        # sign and equality decisions use the zero band margin * rho
        for name in ("pendant_sign", "path_symmetry"):
            for r in out[name].reports:
                assert r.margin == MARGIN and MARGIN < r.tolerance < MARGIN * 1e4


def test_10_monotonicity_suite():
    with criterion(10, "path shifts, balancing, sigma moves and clique moves strictly monotone", 180.0):
        out = harness.monotone_campaigns(n_bases=20, n_random=100, solver=SOLVER, margin=MARGIN)
        for res in out.values():
            assert campaign_ok(res)
        assert len(out["path_shift"].reports) == 20
        assert all(r.configurations == 9 for r in out["path_shift"].reports)  # every p >= q >= 1, p+q <= 6
        assert len(out["balancing"].reports) == len(harness.d_family_grid(9))
        assert len(out["sigma_move"].reports) == len(out["clique_move"].reports) == 100
        margins = [c.value for res in out.values() for r in res.reports for c in r.checks if c.kind == "strict"]
        assert margins and min(margins) > MARGIN


def test_11_global_sanity():
    with criterion(11, "rho >= s(G) and residual <= tol on every instance touched above", 5.0):
        st = SOLVER.stats
        assert st.instances > 1000
        assert st.ok, st.violations[:5]
        assert st.max_residual_ratio <= 1.0
        assert st.min_rho_minus_status >= -SOLVER.tol
