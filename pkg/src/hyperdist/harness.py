"""Executable checks for the extremal theorems and the Perron-vector lemmas.

Every check returns a report carrying the raw numbers (residuals for
identities, margins for strict inequalities) next to the tolerance used, so
a verdict can always be traced back to the measured quantity.

Conventions:

* identities pass when ``|lhs - rhs| <= tol`` (absolute, default 1e-9);
* strict inequalities pass when the margin exceeds ``margin`` (1e-9);
* sign comparisons treat ``|z| <= margin * rho`` as zero;
* a unique extremal structure needs a gap above ``margin * rho`` to the
  best non-isomorphic competitor; smaller gaps are "inconclusive".
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Sequence

import numpy as np

from .constructions import (
    TreeSkeleton,
    attach_pendant_paths,
    construct_D,
    construct_S,
    loose_path,
    move_edges,
    power_of_tree,
    skeleton_of,
)
from .core import (
    Hypergraph,
    HypergraphError,
    components,
    components_after_edge_removal,
    from_edge_list,
    is_hypertree,
)
from .enumeration import (
    ClassDescriptor,
    canonical_code,
    enumerate_class,
    enumerate_free_trees,
    random_tree,
    tree_from_code,
)
from .spectral import SpectralResult, distance_matrix, spectral_radius
from .structure import PendantPath, branches_at, count_pendant_paths

DEFAULT_MARGIN = 1e-9
IDENTITY_TOL = 1e-9
SOLVER_TOL = 1e-12  # relative residual used for every harness solve


class PreconditionError(HypergraphError):
    """A lemma or theorem check was asked for outside its hypotheses."""


class EmptyClassError(HypergraphError):
    pass


class NotCoveredError(HypergraphError):
    """No theorem item applies to the requested class."""


# ---------------------------------------------------------------------------
# solving with sanity bookkeeping


@dataclass
class SanityStats:
    """Solver sanity record, keyed by hypergraph so that merging the stats of
    parallel chunks gives the same totals as a serial run."""

    seen: set = field(default_factory=set)
    max_residual_ratio: float = 0.0  # residual / (tol * rho)
    min_rho_minus_status: float = math.inf
    problems: set = field(default_factory=set)

    def merge(self, other: "SanityStats") -> None:
        self.seen |= other.seen
        self.max_residual_ratio = max(self.max_residual_ratio, other.max_residual_ratio)
        self.min_rho_minus_status = min(self.min_rho_minus_status, other.min_rho_minus_status)
        self.problems |= other.problems

    @property
    def instances(self) -> int:
        return len(self.seen)

    @property
    def violations(self) -> list[str]:
        return sorted(self.problems)

    @property
    def ok(self) -> bool:
        return not self.problems


class Solver:
    """Caching wrapper around :func:`spectral_radius`.

    Every fresh solve is checked for ``rho >= s(G)`` and for the eigenequation
    residual bound; failures are collected in ``stats.violations``.
    """

    def __init__(self, tol: float = SOLVER_TOL):
        self.tol = tol
        self.cache: dict[Hypergraph, SpectralResult] = {}
        self.stats = SanityStats()

    def __call__(self, G: Hypergraph) -> SpectralResult:
        res = self.cache.get(G)
        if res is not None:
            return res
        res = spectral_radius(G, self.tol)
        D = distance_matrix(G)
        s = int(D.sum(axis=1).min())
        resid = float(np.max(np.abs(res.rho * res.perron - D @ res.perron)))
        st = self.stats
        st.seen.add(G)
        bound = self.tol * max(res.rho, 1.0)
        st.max_residual_ratio = max(st.max_residual_ratio, resid / bound)
        st.min_rho_minus_status = min(st.min_rho_minus_status, res.rho - s)
        if resid > bound:
            st.problems.add(f"residual {resid:.3e} > {bound:.3e} on {G!r}")
        if res.rho < s - bound:
            st.problems.add(f"rho {res.rho!r} < s(G) {s} on {G!r}")
        if np.any(res.perron <= 0):
            st.problems.add(f"non-positive Perron entry on {G!r}")
        self.cache[G] = res
        return res


def _solver(solver: Solver | None) -> Solver:
    return solver if solver is not None else Solver()


# ---------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    kind: str  # "identity" | "strict" | "sign" | "equal"
    value: float  # residual for identity/equal, margin for strict, smallest |difference| for sign
    passed: bool

    def to_json_obj(self) -> dict:
        return {"name": self.name, "kind": self.kind, "value": _num(self.value), "passed": self.passed}


@dataclass
class LemmaReport:
    lemma: str
    instance: str
    tolerance: float
    margin: float
    checks: list[Check] = field(default_factory=list)
    configurations: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def worst(self) -> Check | None:
        failed = [c for c in self.checks if not c.passed]
        return failed[0] if failed else None

    def identity(self, name: str, lhs: float, rhs: float) -> None:
        r = abs(lhs - rhs)
        self.checks.append(Check(name, "identity", r, r <= self.tolerance))

    def strict(self, name: str, bigger: float, smaller: float) -> None:
        d = bigger - smaller
        self.checks.append(Check(name, "strict", d, d > self.margin))

    def equal(self, name: str, a: float, b: float, band: float) -> None:
        d = abs(a - b)
        self.checks.append(Check(name, "equal", d, d <= band))

    def to_json_obj(self) -> dict:
        return {
            "lemma": self.lemma,
            "instance": self.instance,
            "tolerance": self.tolerance,
            "margin": self.margin,
            "configurations": self.configurations,
            "checks": [c.to_json_obj() for c in self.checks],
            "notes": self.notes,
            "verdict": self.verdict,
        }


def _num(x: float):
    if x is None:
        return None
    if math.isinf(x):
        return None
    return float(f"{x:.15g}")


def _sign(z: float, band: float) -> int:
    if abs(z) <= band:
        return 0
    return 1 if z > 0 else -1


# ---------------------------------------------------------------------------
# extremal theorems


@dataclass
class ExtremalReport:
    descriptor: ClassDescriptor
    members: list[tuple[str, float]]
    argmax: str
    argmin: str
    max_gap: float | None
    min_gap: float | None
    predicted: dict[str, str]
    verdicts: dict[str, str]
    margin: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(v in ("pass", "not_applicable", "not_requested") for v in self.verdicts.values())

    @property
    def rho(self) -> dict[str, float]:
        return dict(self.members)

    def to_json_obj(self) -> dict:
        c = self.descriptor
        return {
            "class": {"m": c.m, "r": c.r, "ell": c.ell, "k": c.k},
            "members": [{"code": code, "rho": _num(rho)} for code, rho in self.members],
            "argmax": self.argmax,
            "argmin": self.argmin,
            "max_gap": _num(self.max_gap),
            "min_gap": _num(self.min_gap),
            "predicted": self.predicted,
            "verdicts": self.verdicts,
            "margin": self.margin,
            "tolerance": self.tolerance,
        }


MAX_ITEMS = ("two_paths_max", "balanced_max", "single_path_max", "pendant_edges_max")
MIN_ITEMS = ("star_min",)


def predicted_structure(c: ClassDescriptor, item: str) -> Hypergraph:
    m, r, ell, k = c.m, c.r, c.ell, c.k
    if item == "two_paths_max":
        return loose_path(m, r)[0]
    if item == "balanced_max":
        return construct_D(m, k // 2, (k + 1) // 2, ell, r)[0]
    if item == "single_path_max":
        return construct_D(m, 1, 2, 1, r)[0]
    if item == "pendant_edges_max":
        return construct_D(m, k // 2, (k + 1) // 2, 1, r)[0]
    if item == "star_min":
        return construct_S(m, k, ell, r)[0]
    raise ValueError(item)


def hypertree_code(H: Hypergraph) -> str:
    return canonical_code(skeleton_of(H)[0])


def verify_extremal(c: ClassDescriptor, mode: str = "both", solver: Solver | None = None,
                    margin: float = DEFAULT_MARGIN, explore: bool = False) -> ExtremalReport:
    """Exhaustively compare the class against each applicable theorem item."""
    if mode not in ("max", "min", "both"):
        raise ValueError(f"mode must be max, min or both, got {mode!r}")
    solver = _solver(solver)
    applicable = c.applicable()
    wanted = (MAX_ITEMS if mode in ("max", "both") else ()) + (MIN_ITEMS if mode in ("min", "both") else ())
    if not explore and not any(applicable[i] for i in wanted):
        raise NotCoveredError(f"no theorem item covers class {c.label} in mode {mode}")
    members = enumerate_class(c)
    if not members:
        raise EmptyClassError(f"class {c.label} is empty")
    scored = sorted((canonical_code(T), solver(H).rho) for T, H in members)
    best = max(rho for _, rho in scored)
    worst = min(rho for _, rho in scored)
    argmax = next(code for code, rho in scored if rho == best)
    argmin = next(code for code, rho in scored if rho == worst)
    others_max = [rho for code, rho in scored if code != argmax]
    others_min = [rho for code, rho in scored if code != argmin]
    max_gap = best - max(others_max) if others_max else None
    min_gap = min(others_min) - worst if others_min else None
    rho_of = dict(scored)

    predicted, verdicts = {}, {}
    for item in MAX_ITEMS + MIN_ITEMS:
        if item not in wanted:
            verdicts[item] = "not_requested"
            continue
        if not applicable[item]:
            verdicts[item] = "not_applicable"
            continue
        code = hypertree_code(predicted_structure(c, item))
        predicted[item] = code
        is_max = item in MAX_ITEMS
        extreme, gap = (argmax, max_gap) if is_max else (argmin, min_gap)
        ext_rho = best if is_max else worst
        band = margin * ext_rho
        if code not in rho_of:
            verdicts[item] = "fail"
        elif code != extreme:
            verdicts[item] = "inconclusive" if abs(rho_of[code] - ext_rho) <= band else "fail"
        elif gap is None or gap > band:
            verdicts[item] = "pass"
        else:
            verdicts[item] = "inconclusive"
    return ExtremalReport(c, scored, argmax, argmin, max_gap, min_gap, predicted, verdicts, margin, solver.tol)


def theorem_classes(item: str, m_max: int, r: int = 3, m_min: int = 1) -> list[ClassDescriptor]:
    """Every class (m <= m_max) satisfying the hypotheses of one theorem item."""
    out = []
    for m in range(m_min, m_max + 1):
        for ell in range(1, m + 1):
            for k in range(0, m + 2):
                c = ClassDescriptor(m, r, ell, k)
                if c.applicable()[item]:
                    out.append(c)
    return out


# ---------------------------------------------------------------------------
# two-edge identities


@dataclass(frozen=True)
class TwoEdgeConfig:
    e1: int
    e2: int
    u1: int
    v1: int
    u2: int
    v2: int
    w1: int | None = None
    w2: int | None = None


def discover_two_edge_configs(T: Hypergraph) -> list[TwoEdgeConfig]:
    """All (e1, e2, u1, v1, u2, v2) with d(u1,u2) = d(v1,v2) + 2.

    Where every vertex of e_i outside {u_i, v_i} has degree 1 (and there is
    one), w_i is set to the lowest such vertex.
    """
    D = T.all_distances
    deg = T.degrees
    out = []
    for e1, E1 in enumerate(T.edges):
        for e2, E2 in enumerate(T.edges):
            if e1 == e2:
                continue
            for u1 in E1:
                for v1 in E1:
                    if u1 == v1:
                        continue
                    for u2 in E2:
                        for v2 in E2:
                            if u2 == v2 or D[u1, u2] != D[v1, v2] + 2:
                                continue
                            ws = []
                            for E, u, v in ((E1, u1, v1), (E2, u2, v2)):
                                rest = [w for w in E if w not in (u, v)]
                                ws.append(min(rest) if rest and all(deg[w] == 1 for w in rest) else None)
                            if ws[0] is None or ws[1] is None or len(E1) != len(E2):
                                ws = [None, None]
                            out.append(TwoEdgeConfig(e1, e2, u1, v1, u2, v2, ws[0], ws[1]))
    return out


def check_two_edge_identities(T: Hypergraph, config: TwoEdgeConfig | Sequence[TwoEdgeConfig] | None = None,
                              solver: Solver | None = None, tol: float = IDENTITY_TOL,
                              instance: str = "") -> LemmaReport:
    """Evaluate the sigma identity for edge pairs and, where the outer vertices
    of both edges are pendant, the two filler identities.

    With ``config=None`` every valid configuration is discovered and checked.
    """
    if not is_hypertree(T):
        raise PreconditionError("two-edge identities need a hypertree")
    if config is None:
        configs = discover_two_edge_configs(T)
    elif isinstance(config, TwoEdgeConfig):
        configs = [config]
    else:
        configs = list(config)
    D = T.all_distances
    deg = T.degrees
    for cf in configs:
        E1, E2 = T.edges[cf.e1], T.edges[cf.e2]
        if not ({cf.u1, cf.v1} <= set(E1) and {cf.u2, cf.v2} <= set(E2)) or cf.u1 == cf.v1 or cf.u2 == cf.v2:
            raise PreconditionError(f"{cf}: u_i, v_i must be distinct vertices of e_i")
        if D[cf.u1, cf.u2] != D[cf.v1, cf.v2] + 2:
            raise PreconditionError(f"{cf}: need d(u1,u2) = d(v1,v2) + 2")
        if cf.w1 is not None or cf.w2 is not None:
            for E, u, v, w in ((E1, cf.u1, cf.v1, cf.w1), (E2, cf.u2, cf.v2, cf.w2)):
                rest = [z for z in E if z not in (u, v)]
                if w not in rest or any(deg[z] != 1 for z in rest):
                    raise PreconditionError(f"{cf}: filler must be a vertex of e_i outside u_i, v_i, all of degree 1")
            if len(E1) != len(E2):
                raise PreconditionError(f"{cf}: filler identities need |e1| = |e2|")

    sp = _solver(solver)(T)
    rho, x = sp.rho, sp.perron
    comps = {}
    rep = LemmaReport("two_edge_identities", instance or repr(T), tol, DEFAULT_MARGIN, configurations=len(configs))
    filler_configs = 0
    for cf in configs:
        for e in (cf.e1, cf.e2):
            if e not in comps:
                comps[e] = components_after_edge_removal(T, e)
        s1 = float(x[sorted(comps[cf.e1].component_of(cf.u1))].sum())
        s2 = float(x[sorted(comps[cf.e2].component_of(cf.u2))].sum())
        a1 = float(x[D[:, cf.u1] == D[:, cf.v1]].sum())
        a2 = float(x[D[:, cf.u2] == D[:, cf.v2]].sum())
        tag = f"e{cf.e1},e{cf.e2},u{cf.u1},v{cf.v1},u{cf.u2},v{cf.v2}"
        lhs = rho * (x[cf.u1] - x[cf.u2]) - rho * (x[cf.v1] - x[cf.v2])
        rep.identity(f"sigma_identity[{tag}]", lhs, 2 * (s2 - s1) + a2 - a1)
        if cf.w1 is not None:
            filler_configs += 1
            r = len(T.edges[cf.e1])
            dw = x[cf.w1] - x[cf.w2]
            rep.identity(f"filler_identity_u[{tag}]", rho * (x[cf.u1] - x[cf.u2]) - (rho + 1) * dw, s2 - s1)
            rep.identity(f"filler_identity_v[{tag}]", (rho + 1) * dw - rho * (x[cf.v1] - x[cf.v2]),
                         (r - 2) * (-dw) + s2 - s1)
    rep.notes["filler_configurations"] = filler_configs
    return rep


# ---------------------------------------------------------------------------
# Perron-structure lemmas


def _filler(G: Hypergraph, edge: int, avoid: Iterable[int]) -> int:
    avoid = set(avoid)
    cands = [w for w in G.edges[edge] if w not in avoid and G.degrees[w] == 1]
    if not cands:
        raise PreconditionError(f"edge {edge} has no degree-1 filler outside {sorted(avoid)}")
    return min(cands)


def check_pendant_sign_lemma(T: Hypergraph, P1: PendantPath, P2: PendantPath, solver: Solver | None = None,
                             margin: float = DEFAULT_MARGIN, instance: str = "") -> LemmaReport:
    """Sign agreement and increasing differences along two equal-length pendant paths.

    The paths may share their anchor; otherwise they must be vertex-disjoint.
    The path with the larger anchor entry is taken as the primed one.
    """
    if P1.length != P2.length:
        raise PreconditionError("pendant paths must have equal length")
    V1 = {v for e in P1.edges for v in T.edges[e]}
    V2 = {v for e in P2.edges for v in T.edges[e]}
    shared = V1 & V2
    if shared and not (shared == {P1.anchor} and P1.anchor == P2.anchor):
        raise PreconditionError("pendant paths must be vertex-disjoint (a shared anchor is allowed)")
    ell = P1.length
    sp = _solver(solver)(T)
    rho, x = sp.rho, sp.perron
    band = margin * rho
    if x[P1.anchor] - x[P2.anchor] < -band:
        P1, P2 = P2, P1
    u, v = P1.vertices, P2.vertices
    wu = [_filler(T, P1.edges[i], (u[i], u[i + 1])) for i in range(ell)]
    wv = [_filler(T, P2.edges[i], (v[i], v[i + 1])) for i in range(ell)]
    du = [x[u[i]] - x[v[i]] for i in range(ell + 1)]
    dw = [x[wu[i]] - x[wv[i]] for i in range(ell)]
    rep = LemmaReport("pendant_sign", instance or repr(T), band, margin)
    rep.notes["anchor_difference"] = _num(du[ell])
    for i in range(ell):
        triple = (du[i], dw[i], du[i + 1])
        signs = {_sign(z, band) for z in triple}
        rep.checks.append(Check(f"same_sign[{i + 1}]", "sign", min(abs(z) for z in triple), len(signs) == 1))
    if du[ell] > band:
        for i in range(ell):
            rep.strict(f"u_chain[{i + 1}]", du[i + 1], du[i])
            rep.strict(f"w_chain[{i + 1}]", du[i + 1], dw[i])
    return rep


@dataclass
class JoinedPath:
    T: Hypergraph
    path: list[int]  # v_1 .. v_t
    fillers: list[int]  # w_1 .. w_{t-1}
    side1: list[int]  # vertices of T1 inside T
    side2: list[int]


def join_by_path(T1: Hypergraph, u: int, T2: Hypergraph, v: int, t: int, r: int) -> JoinedPath:
    """Join T1 at u to T2 at v through a fresh r-uniform loose path of t-1 edges.

    T1 keeps its indices, T2 is shifted by |V(T1)|, then interior path
    vertices, then the path fillers.
    """
    if t < 2 or r < 3:
        raise PreconditionError(f"need t >= 2 and r >= 3, got t={t}, r={r}")
    T1._check_vertex(u)
    T2._check_vertex(v)
    for G in (T1, T2):
        if G.m and not G.is_uniform(r):
            raise PreconditionError("both sides must be r-uniform")
    n1 = T1.n
    off = n1
    edges = [list(e) for e in T1.edges] + [[w + off for w in e] for e in T2.edges]
    n = n1 + T2.n
    path = [u] + list(range(n, n + t - 2)) + [v + off]
    n += t - 2
    fillers = []
    for i in range(t - 1):
        fill = list(range(n, n + r - 2))
        n += r - 2
        fillers.append(fill[0])
        edges.append([path[i], path[i + 1], *fill])
    T = from_edge_list(n, edges)
    return JoinedPath(T, path, fillers, list(range(n1)), list(range(off, off + T2.n)))


def check_path_symmetry_lemma(T1: Hypergraph, u: int, T2: Hypergraph, v: int, t: int, r: int,
                              solver: Solver | None = None, margin: float = DEFAULT_MARGIN,
                              instance: str = "") -> LemmaReport:
    """Palindromic equalities or strict ordering along a path joining two hypertrees,
    decided by comparing sigma(T1) - x_u with sigma(T2) - x_v."""
    J = join_by_path(T1, u, T2, v, t, r)
    if not is_hypertree(J.T):
        raise PreconditionError("joined hypergraph is not a hypertree")
    sp = _solver(solver)(J.T)
    rho, x = sp.rho, sp.perron
    band = margin * rho
    p = J.path
    lhs1 = float(x[J.side1].sum() - x[p[0]])
    lhs2 = float(x[J.side2].sum() - x[p[-1]])
    diff = lhs2 - lhs1
    rep = LemmaReport("path_symmetry", instance or f"join(t={t}, r={r})", band, margin)
    rep.notes["sigma_difference"] = _num(diff)
    vs = [x[w] for w in p]
    ws = [x[w] for w in J.fillers]
    if diff < -band:
        vs, ws = vs[::-1], ws[::-1]
        rep.notes["orientation"] = "reversed"
    # 1-based helpers
    V = lambda i: vs[i - 1]  # noqa: E731
    W = lambda i: ws[i - 1]  # noqa: E731
    if abs(diff) <= band:
        rep.notes["case"] = "equal"
        for i in range(1, t // 2 + 1):
            rep.equal(f"v_palindrome[{i}]", V(i), V(t + 1 - i), band)
        for i in range(1, (t - 1) // 2 + 1):
            rep.equal(f"w_palindrome[{i}]", W(i), W(t - i), band)
    else:
        rep.notes["case"] = "strict"
        for i in range(1, t // 2 + 1):
            rep.strict(f"v_order[{i}]", V(i), V(t + 1 - i))
        for i in range(1, (t - 1) // 2 + 1):
            rep.strict(f"w_order[{i}]", W(i), W(t - i))
        for i in range(1, t // 2):
            rep.strict(f"v_chain[{i}]", V(i) - V(t + 1 - i), V(i + 1) - V(t - i))
        for i in range(1, (t - 1) // 2 + 1):
            rep.strict(f"vw_chain[{i}]", V(i) - V(t + 1 - i), W(i) - W(t - i))
    return rep


def status_bound(m: int, a: int, b: int, ell: int, r: int) -> int:
    t = m - ell * (a + b) + 1
    return (a * ell * (r - 1) * (t - 1)
            + sum(t - 2 * i + 1 for i in range(1, t // 2 + 1))
            + (r - 2) * sum(t - 2 * i for i in range(1, (t - 1) // 2 + 1)))


def check_D_family_lemmas(m: int, a: int, b: int, ell: int, r: int, solver: Solver | None = None,
                          margin: float = DEFAULT_MARGIN) -> LemmaReport:
    """Central-path ordering, the status lower bound and a/b balancing on D_{r,ell}(m,a,b)."""
    if not (a >= 1 and b >= a + 2 and ell >= 1 and ell * (a + b) <= m - 1 and r >= 3):
        raise PreconditionError(f"need a >= 1, b >= a+2, ell*(a+b) <= m-1, r >= 3; got m={m}, a={a}, b={b}, ell={ell}, r={r}")
    solver = _solver(solver)
    T, lab = construct_D(m, a, b, ell, r)
    sp = solver(T)
    rho, x = sp.rho, sp.perron
    t = m - ell * (a + b) + 1
    V = lambda i: x[lab[f"v{i}"]]  # noqa: E731
    W = lambda i: x[lab[f"w{i}"]]  # noqa: E731
    rep = LemmaReport("D_family", f"D_{{{r},{ell}}}({m},{a},{b})", IDENTITY_TOL, margin)
    rep.strict("x_v1_gt_x_vt", V(1), V(t))
    for i in range(1, t // 2):
        rep.strict(f"v_chain[{i}]", V(i) - V(t + 1 - i), V(i + 1) - V(t - i))
    for i in range(1, (t - 1) // 2 + 1):
        rep.strict(f"vw_chain[{i}]", V(i) - V(t + 1 - i), W(i) - W(t - i))
    bound = status_bound(m, a, b, ell, r)
    rep.notes["status_bound"] = bound
    rep.notes["min_status"] = int(distance_matrix(T).sum(axis=1).min())
    rep.strict("rho_gt_status_bound", rho, bound)
    balanced = solver(construct_D(m, a + 1, b - 1, ell, r)[0])
    rep.strict("balancing_increases_rho", balanced.rho, rho)
    return rep


# ---------------------------------------------------------------------------
# monotone moves


@dataclass(frozen=True)
class PathShift:
    v: int
    p: int
    q: int


@dataclass(frozen=True)
class SigmaMove:
    u: int
    v: int
    moved_edges: tuple[int, ...]


@dataclass(frozen=True)
class CliqueMove:
    w1: int
    w2: int


def check_monotone_moves(G: Hypergraph, move: PathShift | SigmaMove | CliqueMove, solver: Solver | None = None,
                         margin: float = DEFAULT_MARGIN, instance: str = "") -> LemmaReport:
    """Build G' with the requested move and assert the strict rho comparison.

    * ``PathShift``: rho(G(v,p,q)) < rho(G(v,p+1,q-1)), p >= q >= 1.
    * ``SigmaMove``: moving the edges at u of some branches to a vertex v of
      another branch G2 increases rho when the untouched branches weigh at
      least sigma(G2).
    * ``CliqueMove``: for w1, w2 in one edge, both of degree >= 2, moving every
      other edge at w2 onto w1 decreases rho.
    """
    solver = _solver(solver)
    name = instance or repr(G)
    if isinstance(move, PathShift):
        r = G.uniformity
        if r is None or not G.is_connected:
            raise PreconditionError("path shift needs a connected uniform hypergraph with at least one edge")
        if not move.p >= move.q >= 1:
            raise PreconditionError(f"need p >= q >= 1, got p={move.p}, q={move.q}")
        before = attach_pendant_paths(G, move.v, move.p, move.q, r)
        after = attach_pendant_paths(G, move.v, move.p + 1, move.q - 1, r)
        rep = LemmaReport("path_shift", f"{name} v={move.v} p={move.p} q={move.q}", IDENTITY_TOL, margin)
        rep.strict("rho_increases", solver(after).rho, solver(before).rho)
        return rep

    if not is_hypertree(G):
        raise PreconditionError("sigma and clique moves are checked on hypertrees")

    if isinstance(move, SigmaMove):
        br = branches_at(G, move.u)
        if len(br.branches) < 3:
            raise PreconditionError(f"vertex {move.u} needs degree >= 3")
        g2 = br.branch_containing(move.v)
        moved = set(move.moved_edges)
        idx = {e: i for i, e in enumerate(br.first_edges)}
        if not moved or any(e not in idx for e in moved):
            raise PreconditionError("moved edges must be a nonempty set of edges at u")
        moved_branches = {idx[e] for e in moved}
        if g2 in moved_branches:
            raise PreconditionError("cannot move the branch that contains v")
        rest = [i for i in range(len(br.branches)) if i != g2 and i not in moved_branches]
        if not rest:
            raise PreconditionError("at least one branch must stay at u")
        x = solver(G).perron
        s1 = float(sum(x[w] for i in rest for w in br.branches[i] if w != move.u))
        s2 = float(sum(x[w] for w in br.branches[g2] if w != move.u))
        if s1 < s2:
            raise PreconditionError(f"need sigma(G1) >= sigma(G2), got {s1} < {s2}")
        after = move_edges(G, move.u, move.v, moved)
        rep = LemmaReport("sigma_move", f"{name} u={move.u} v={move.v} I={sorted(moved)}", IDENTITY_TOL, margin)
        rep.notes["sigma_G1_minus_sigma_G2"] = _num(s1 - s2)
        rep.strict("rho_increases", solver(after).rho, solver(G).rho)
        return rep

    if isinstance(move, CliqueMove):
        w1, w2 = move.w1, move.w2
        shared = set(G.incidence[w1]) & set(G.incidence[w2])
        if len(shared) != 1:
            raise PreconditionError("w1 and w2 must share exactly one edge")
        (e0,) = shared
        moved = [e for e in G.incidence[w2] if e != e0]
        if G.degree(w1) < 2 or not moved:
            raise PreconditionError("both w1 and w2 need an edge outside their common edge")
        # G0 is what remains connected to e0 once the other edges at w1, w2 are dropped
        drop = set(moved) | {e for e in G.incidence[w1] if e != e0}
        part = components(G.n, [f for i, f in enumerate(G.edges) if i not in drop])
        g0 = part.component_of(w1)
        g0_edges = [f for i, f in enumerate(G.edges) if i not in drop and f[0] in g0]
        nb = lambda w: {z for f in g0_edges if w in f for z in f} - {w}  # noqa: E731
        if nb(w1) - {w2} != nb(w2) - {w1}:
            raise PreconditionError("w1 and w2 must have equal neighborhoods inside G0")
        after = move_edges(G, w2, w1, moved)
        rep = LemmaReport("clique_move", f"{name} w1={w1} w2={w2}", IDENTITY_TOL, margin)
        rep.strict("rho_decreases", solver(G).rho, solver(after).rho)
        return rep

    raise TypeError(f"unknown move {move!r}")


# ---------------------------------------------------------------------------
# seeded instance generation


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([salt, seed])


def random_power_hypertree(seed: int, m_range: tuple[int, int] = (2, 10), rs: Sequence[int] = (3, 4, 5),
                           salt: int = 0, accept: Callable[[TreeSkeleton], bool] | None = None
                           ) -> tuple[TreeSkeleton, Hypergraph, int]:
    """Seeded random power hypertree; retries (deterministically) until ``accept`` holds."""
    rng = _rng(seed, salt)
    for _ in range(1000):
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        r = int(rng.choice(rs))
        T = random_tree(m + 1, int(rng.integers(2**31)))
        if accept is None or accept(T):
            return T, power_of_tree(T, r)[0], r
    raise RuntimeError(f"no acceptable random tree for seed {seed}")


# ---------------------------------------------------------------------------
# campaigns


@dataclass
class CampaignResult:
    name: str
    reports: list
    stats: SanityStats

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    @property
    def configurations(self) -> int:
        return sum(getattr(r, "configurations", 0) for r in self.reports)


def _run_chunk(args) -> tuple[list, SanityStats]:
    fn, tasks, tol = args
    solver = Solver(tol)
    out = [fn(task, solver) for task in tasks]
    return out, solver.stats


def run_tasks(name: str, fn: Callable, tasks: list, jobs: int = 1, solver: Solver | None = None,
              margin: float = DEFAULT_MARGIN, tol: float = SOLVER_TOL) -> CampaignResult:
    """Apply ``fn(task, solver, margin=margin)`` to every task, keeping task order.

    With ``jobs > 1`` tasks are split into contiguous chunks across processes,
    each with its own solver, so serial and parallel runs produce identical
    reports. A supplied ``solver`` overrides ``tol`` and absorbs the sanity
    statistics of the run.
    """
    fn = partial(fn, margin=margin)
    if solver is not None:
        tol = solver.tol
    if jobs <= 1:
        local = Solver(tol)
        if solver is not None:
            local.cache = solver.cache
        reports = [fn(task, local) for task in tasks]
        stats = local.stats
    else:
        size = max(1, math.ceil(len(tasks) / jobs))
        chunks = [(fn, tasks[i:i + size], tol) for i in range(0, len(tasks), size)]
        reports, stats = [], SanityStats()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out, st in pool.map(_run_chunk, chunks):
                reports.extend(out)
                stats.merge(st)
    if solver is not None:
        solver.stats.merge(stats)
    return CampaignResult(name, reports, stats)


# theorem campaigns


def _extremal_task(task, solver, margin=DEFAULT_MARGIN):
    c, mode = task
    return verify_extremal(c, mode, solver, margin)


def theorem_campaign(item: str, m_max: int, r: int = 3, jobs: int = 1, solver: Solver | None = None,
                     margin: float = DEFAULT_MARGIN, tol: float = SOLVER_TOL) -> CampaignResult:
    """Every class within the hypotheses of one theorem item, m <= m_max."""
    mode = "min" if item in MIN_ITEMS else "max"
    tasks = [(c, mode) for c in theorem_classes(item, m_max, r)]
    return run_tasks(item, _extremal_task, tasks, jobs, solver, margin, tol)


# identity campaign


def _identity_task(task, solver, margin=DEFAULT_MARGIN):
    kind, payload = task
    if kind == "tree":
        code, r = payload
        H = power_of_tree(tree_from_code(code), r)[0]
        return check_two_edge_identities(H, solver=solver, instance=f"power(r={r}) of {code}")
    seed = payload
    T, H, r = random_power_hypertree(seed, (2, 10), (3, 4, 5), salt=22)
    return check_two_edge_identities(H, solver=solver, instance=f"seed={seed} r={r} {canonical_code(T)}")


def identity_campaign(m_max: int = 6, r: int = 3, n_random: int = 200, jobs: int = 1,
                      solver: Solver | None = None, margin: float = DEFAULT_MARGIN,
                      tol: float = SOLVER_TOL) -> CampaignResult:
    tasks = [("tree", (canonical_code(T), r)) for m in range(1, m_max + 1) for T in enumerate_free_trees(m + 1)]
    tasks += [("seed", s) for s in range(n_random)]
    return run_tasks("identities", _identity_task, tasks, jobs, solver, margin, tol)


# Perron-structure campaigns


def pendant_pairs(H: Hypergraph, ell: int) -> list[tuple[PendantPath, PendantPath]]:
    """Pairs of pendant paths of length ell that are disjoint or share only their anchor."""
    paths = count_pendant_paths(H, ell).paths
    out = []
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            P, Q = paths[i], paths[j]
            VP = {v for e in P.edges for v in H.edges[e]}
            VQ = {v for e in Q.edges for v in H.edges[e]}
            shared = VP & VQ
            if not shared or (shared == {P.anchor} and P.anchor == Q.anchor):
                out.append((P, Q))
    return out


def _pendant_report(H: Hypergraph, label: str, solver: Solver, margin: float) -> LemmaReport:
    merged = LemmaReport("pendant_sign", label, margin * solver(H).rho, margin)
    for ell in range(1, H.m + 1):
        for P, Q in pendant_pairs(H, ell):
            rep = check_pendant_sign_lemma(H, P, Q, solver, margin)
            merged.configurations += 1
            merged.checks.extend(Check(f"ell={ell},{P.edges[0]}|{Q.edges[0]}:{c.name}", c.kind, c.value, c.passed)
                                 for c in rep.checks)
    return merged


def pendant_grid(m_max: int = 9, rs: Sequence[int] = (3, 4)) -> list[tuple[str, tuple]]:
    """Every D and S family member with m <= m_max."""
    tasks = []
    for r in rs:
        for m in range(3, m_max + 1):
            for ell in range(1, m):
                for a in range(1, m):
                    for b in range(a, m):
                        if ell * (a + b) <= m - 1:
                            tasks.append(("D", (m, a, b, ell, r)))
                for k in range(1, m):
                    if ClassDescriptor(m, r, ell, k).star_min:
                        tasks.append(("S", (m, k, ell, r)))
    return tasks


def _pendant_task(task, solver, margin=DEFAULT_MARGIN):
    kind, payload = task
    if kind == "D":
        H = construct_D(*payload)[0]
        label = "D_{{{4},{3}}}({0},{1},{2})".format(*payload)
    elif kind == "S":
        H = construct_S(*payload)[0]
        label = "S_{{{3},{2}}}({0},{1})".format(*payload)
    else:
        T, H, r = random_power_hypertree(payload, (2, 12), (3, 4, 5), salt=32)
        label = f"seed={payload} r={r} {canonical_code(T)}"
    return _pendant_report(H, label, solver, margin)


def _random_side(rng: np.random.Generator, r: int) -> Hypergraph:
    m = int(rng.integers(0, 6))
    if m == 0:
        return from_edge_list(1, [])
    return power_of_tree(random_tree(m + 1, int(rng.integers(2**31))), r)[0]


def symmetry_grid(rs: Sequence[int] = (3, 4)) -> list:
    """Two loose paths (or single vertices) joined end, middle or filler first."""
    tasks = []
    for r in rs:
        for t in range(2, 7):
            for m1 in range(0, 3):
                for m2 in range(0, 3):
                    for u in ([0] if m1 == 0 else [0, 1, m1 + 1]):
                        for v in ([0] if m2 == 0 else [0, 1, m2 + 1]):
                            tasks.append(("grid", ((m1, u), (m2, v), t, r)))
    return tasks


def _symmetry_task(task, solver, margin=DEFAULT_MARGIN):
    kind, payload = task
    if kind == "grid":
        (m1, u), (m2, v), t, r = payload
        T1 = loose_path(m1, r)[0] if m1 else from_edge_list(1, [])
        T2 = loose_path(m2, r)[0] if m2 else from_edge_list(1, [])
        return check_path_symmetry_lemma(T1, u, T2, v, t, r, solver, margin,
                                         instance=f"P{m1}@{u} -- P{m2}@{v} t={t} r={r}")
    rng = _rng(payload, 33)
    r = int(rng.choice([3, 4, 5]))
    t = int(rng.integers(2, 8))
    T1 = _random_side(rng, r)
    u = int(rng.integers(T1.n))
    if kind == "mirror":
        T2, v = T1, u
    else:
        T2 = _random_side(rng, r)
        v = int(rng.integers(T2.n))
    return check_path_symmetry_lemma(T1, u, T2, v, t, r, solver, margin,
                                     instance=f"{kind} seed={payload} r={r} t={t} |T1|={T1.n} |T2|={T2.n}")


def d_family_grid(m_max: int = 9, rs: Sequence[int] = (3, 4)) -> list[tuple[int, int, int, int, int]]:
    """All admissible (m, a, b, ell, r) with b >= a + 2 and m <= m_max."""
    out = []
    for r in rs:
        for m in range(1, m_max + 1):
            for ell in range(1, m):
                for a in range(1, m):
                    for b in range(a + 2, m):
                        if ell * (a + b) <= m - 1:
                            out.append((m, a, b, ell, r))
    return out


def _d_family_task(task, solver, margin=DEFAULT_MARGIN):
    if task[0] == "seed":
        rng = _rng(task[1], 34)
        r = int(rng.choice([3, 4, 5]))
        a = int(rng.integers(1, 4))
        b = a + 2 + int(rng.integers(0, 3))
        ell = int(rng.integers(1, 3))
        m = ell * (a + b) + 1 + int(rng.integers(0, 8))
        return check_D_family_lemmas(m, a, b, ell, r, solver, margin)
    return check_D_family_lemmas(*task, solver=solver, margin=margin)


def perron_campaigns(n_random: int = 100, jobs: int = 1, solver: Solver | None = None,
                     margin: float = DEFAULT_MARGIN, tol: float = SOLVER_TOL) -> dict[str, CampaignResult]:
    pend = pendant_grid() + [("seed", s) for s in range(n_random)]
    sym = symmetry_grid() + [("mirror", s) for s in range(n_random)] + [("random", s) for s in range(n_random)]
    dfam = d_family_grid() + [("seed", s) for s in range(n_random)]
    return {
        "pendant_sign": run_tasks("pendant_sign", _pendant_task, pend, jobs, solver, margin, tol),
        "path_symmetry": run_tasks("path_symmetry", _symmetry_task, sym, jobs, solver, margin, tol),
        "D_family": run_tasks("D_family", _d_family_task, dfam, jobs, solver, margin, tol),
    }


# monotonicity campaigns


def _path_shift_task(seed, solver, margin=DEFAULT_MARGIN):
    T, H, r = random_power_hypertree(seed, (1, 6), (3, 4, 5), salt=41)
    v = int(_rng(seed, 42).integers(H.n))
    merged = LemmaReport("path_shift", f"seed={seed} r={r} v={v} {canonical_code(T)}", IDENTITY_TOL, margin)
    for s in range(2, 7):
        for q in range(1, s // 2 + 1):
            rep = check_monotone_moves(H, PathShift(v, s - q, q), solver, margin)
            merged.configurations += 1
            merged.checks.extend(Check(f"p={s - q},q={q}:{c.name}", c.kind, c.value, c.passed) for c in rep.checks)
    return merged


def _balancing_task(task, solver, margin=DEFAULT_MARGIN):
    m, a, b, ell, r = task
    rep = LemmaReport("balancing", f"D_{{{r},{ell}}}({m},{a},{b})", IDENTITY_TOL, margin)
    lo = solver(construct_D(m, a, b, ell, r)[0]).rho
    hi = solver(construct_D(m, a + 1, b - 1, ell, r)[0]).rho
    rep.strict("balancing_increases_rho", hi, lo)
    return rep


def _has_hub(T: TreeSkeleton) -> bool:
    return max(T.degrees) >= 3


def _has_internal_edge(T: TreeSkeleton) -> bool:
    deg = T.degrees
    return any(deg[a] >= 2 and deg[b] >= 2 for a, b in T.edges)


def _sigma_move_task(seed, solver, margin=DEFAULT_MARGIN):
    T, H, r = random_power_hypertree(seed, (3, 10), (3, 4, 5), salt=51, accept=_has_hub)
    rng = _rng(seed, 52)
    hubs = [u for u in range(H.n) if H.degree(u) >= 3]
    u = hubs[int(rng.integers(len(hubs)))]
    x = solver(H).perron
    br = branches_at(H, u)
    # the lightest branch plays G2, so any nonempty remainder outweighs it
    weights = [sum(x[w] for w in b if w != u) for b in br.branches]
    g2 = int(np.argmin(weights))
    cands = sorted(br.branches[g2] - {u})
    v = cands[int(rng.integers(len(cands)))]
    others = [i for i in range(len(br.branches)) if i != g2]
    rng.shuffle(others)
    n_move = int(rng.integers(1, len(others)))
    moved = tuple(sorted(br.first_edges[i] for i in others[:n_move]))
    return check_monotone_moves(H, SigmaMove(u, v, moved), solver, margin,
                                instance=f"seed={seed} r={r} {canonical_code(T)}")


def _clique_move_task(seed, solver, margin=DEFAULT_MARGIN):
    T, H, r = random_power_hypertree(seed, (3, 10), (3, 4, 5), salt=61, accept=_has_internal_edge)
    rng = _rng(seed, 62)
    deg = H.degrees
    pairs = [(a, b) for e in H.edges for a in e for b in e if a != b and deg[a] >= 2 and deg[b] >= 2]
    w1, w2 = pairs[int(rng.integers(len(pairs)))]
    return check_monotone_moves(H, CliqueMove(w1, w2), solver, margin,
                                instance=f"seed={seed} r={r} {canonical_code(T)}")


def monotone_campaigns(n_bases: int = 20, n_random: int = 100, jobs: int = 1, solver: Solver | None = None,
                       margin: float = DEFAULT_MARGIN, tol: float = SOLVER_TOL) -> dict[str, CampaignResult]:
    return {
        "path_shift": run_tasks("path_shift", _path_shift_task, list(range(n_bases)), jobs, solver, margin, tol),
        "balancing": run_tasks("balancing", _balancing_task, d_family_grid(), jobs, solver, margin, tol),
        "sigma_move": run_tasks("sigma_move", _sigma_move_task, list(range(n_random)), jobs, solver, margin, tol),
        "clique_move": run_tasks("clique_move", _clique_move_task, list(range(n_random)), jobs, solver, margin, tol),
    }
