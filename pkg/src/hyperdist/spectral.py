"""Distance matrix, distance spectral radius and Perron vector, status, sigma sums."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import DisconnectedError, Hypergraph, HypergraphError

DEFAULT_TOL = 1e-10
MAX_ITER = 1_000_000


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, residual: float):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    iterations: int
    residual: float

    def to_json_obj(self) -> dict:
        return {
            "rho": _sig15(self.rho),
            "perron": [_sig15(x) for x in self.perron],
            "iterations": self.iterations,
            "residual": _sig15(self.residual),
        }


def _sig15(x: float) -> float:
    return float(f"{x:.15g}")


def distance_matrix(G: Hypergraph) -> np.ndarray:
    if not G.is_connected:
        raise DisconnectedError("distance matrix needs a connected hypergraph")
    return G.all_distances


def spectral_radius(G: Hypergraph, tol: float | None = None, *, relative: bool = True,
                    max_iter: int = MAX_ITER) -> SpectralResult:
    """Dominant eigenpair of D(G) by power iteration from the all-ones vector.

    Stops once ``max_u |rho x_u - (D x)_u| <= tol`` (scaled by rho when
    ``relative``). D is nonnegative with positive off-diagonal, so it is
    primitive and the iteration converges to the Perron pair.
    """
    if tol is None:
        tol = DEFAULT_TOL
    if tol <= 0:
        raise HypergraphError(f"tolerance must be positive, got {tol}")
    D = distance_matrix(G).astype(np.float64)
    n = G.n
    x = np.full(n, 1.0 / np.sqrt(n))
    if n == 1:
        return SpectralResult(0.0, x, 0, 0.0)
    y = D @ x
    residual = np.inf
    for it in range(1, max_iter + 1):
        rho = float(x @ y)
        residual = float(np.max(np.abs(rho * x - y)))
        if residual <= (tol * rho if relative else tol):
            return SpectralResult(rho, x, it, residual)
        x = y / np.linalg.norm(y)
        y = D @ x
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", residual)


def eigen_residual(G: Hypergraph, rho: float, x: np.ndarray) -> float:
    """max_u |rho x_u - sum_v d(u,v) x_v|."""
    D = distance_matrix(G)
    return float(np.max(np.abs(rho * x - D @ x)))


def status(G: Hypergraph, u: int) -> int:
    return int(distance_matrix(G)[u].sum())


def min_status(G: Hypergraph) -> int:
    return int(distance_matrix(G).sum(axis=1).min())


def sigma(G: Hypergraph, x: np.ndarray, vertices: Iterable[int]) -> float:
    """Sum of the entries of ``x`` over ``vertices``."""
    if len(x) != G.n:
        raise HypergraphError(f"vector length {len(x)} does not match n={G.n}")
    vs = list(vertices)
    for v in vs:
        G._check_vertex(v)
    return float(sum(x[v] for v in sorted(vs)))
