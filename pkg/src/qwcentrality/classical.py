"""Classical random-walk limits and centrality baselines.

Spectra of the column-stochastic transition matrix ``T = A D^-1`` are taken
from the similar symmetric matrix ``D^-1/2 A D^-1/2`` so every eigensolve is
symmetric and real.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergentSeriesError, UndefinedMeasureError
from .graphs import Graph
from .result import CentralityResult

__all__ = [
    "TransitionData",
    "GoogleMatrixData",
    "transition_data",
    "patched_matrix",
    "google_matrix",
    "degree_centrality",
    "dtrw_limit",
    "ctrw_limit",
    "lazy_step",
    "eigenvector_centrality",
    "pagerank",
    "pagerank_series",
    "rwc",
    "DEFAULT_ALPHA",
    "DEFAULT_EPSILON",
]

DEFAULT_ALPHA = 0.85
DEFAULT_EPSILON = 0.5


@dataclass(frozen=True)
class TransitionData:
    T: np.ndarray
    L_norm: np.ndarray


@dataclass(frozen=True)
class GoogleMatrixData:
    alpha: float
    E: np.ndarray
    G: np.ndarray


def _require_connected(g: Graph, what: str):
    if g.n > 1 and not g.is_connected():
        raise ValueError(f"{what} requires a connected graph")
    if g.n == 1 or np.any(g.degrees == 0):
        raise ValueError(f"{what} requires every vertex to have at least one edge")


def transition_data(g: Graph) -> TransitionData:
    """Transition matrix ``A D^-1`` and normalized Laplacian ``I - T``."""
    d = g.degrees
    if np.any(d == 0):
        raise ValueError("transition matrix undefined: graph has an isolated vertex")
    T = g.adjacency / d[np.newaxis, :]
    return TransitionData(T=T, L_norm=np.eye(g.n) - T)


def _symmetric_walk_spectrum(g: Graph):
    """Eigenpairs of ``D^-1/2 A D^-1/2``, eigenvalues ascending."""
    s = 1.0 / np.sqrt(g.degrees.astype(float))
    M = s[:, None] * g.adjacency * s[None, :]
    return np.linalg.eigh(M)


def degree_centrality(g: Graph) -> CentralityResult:
    d = g.degrees.astype(float)
    total = d.sum()
    if total == 0:
        raise UndefinedMeasureError("degree centrality is undefined on an edgeless graph")
    return CentralityResult("degree", d / total)


def dtrw_limit(g: Graph) -> CentralityResult:
    """Limiting distribution of the discrete-time walk, ``pi_j = D_jj / Tr D``."""
    _require_connected(g, "DTRW limiting distribution")
    d = g.degrees.astype(float)
    pi = d / d.sum()
    T = transition_data(g).T
    resid = np.max(np.abs(T @ pi - pi))
    if resid > 1e-10:
        raise ArithmeticError(f"stationarity check failed: |T pi - pi| = {resid:.2e}")
    return CentralityResult("dtrw", pi)


def ctrw_limit(g: Graph, tol: float = 1e-9) -> CentralityResult:
    """Probability-normalized nullspace of the normalized Laplacian ``I - A D^-1``."""
    if np.any(g.degrees == 0):
        raise ValueError("CTRW limiting distribution requires every vertex to have an edge")
    evals, evecs = _symmetric_walk_spectrum(g)
    # eigenvalue 1 of the walk operator <-> nullspace of the Laplacian
    null = np.flatnonzero(np.abs(1.0 - evals) <= tol)
    if null.size != 1:
        raise ValueError(f"normalized Laplacian has a {null.size}-dimensional nullspace; graph is disconnected")
    phi = evecs[:, null[0]]
    pi = np.sqrt(g.degrees.astype(float)) * phi
    pi = pi / pi.sum()
    return CentralityResult("ctrw", pi)


def lazy_step(P, T, epsilon: float) -> np.ndarray:
    """One step of the lazy walk: move along ``T`` with probability ``epsilon``."""
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"laziness epsilon must lie in (0, 1], got {epsilon}")
    P = np.asarray(P, dtype=float)
    return epsilon * (T @ P) + (1.0 - epsilon) * P


def eigenvector_centrality(g: Graph) -> CentralityResult:
    """Perron eigenvector of ``A`` normalized to unit sum."""
    _require_connected(g, "eigenvector centrality")
    A = g.adjacency
    evals, evecs = np.linalg.eigh(A)
    lam, v = evals[-1], evecs[:, -1]
    v = v * np.sign(v.sum())
    v = v / v.sum()
    if np.any(v <= 0):
        raise ArithmeticError("Perron vector is not strictly positive")
    resid = np.linalg.norm(A @ v - lam * v)
    if resid > 1e-10:
        raise ArithmeticError(f"eigenvector residual {resid:.2e} exceeds 1e-10")
    return CentralityResult("eigenvector", v)


def patched_matrix(adjacency) -> np.ndarray:
    """Column-normalized adjacency with all-zero columns replaced by ``1/N``.

    Accepts any non-negative square array so the dangling-column branch can be
    exercised directly.
    """
    A = np.asarray(adjacency, dtype=float)
    n = A.shape[0]
    colsum = A.sum(axis=0)
    E = np.empty_like(A)
    dangling = colsum == 0
    E[:, ~dangling] = A[:, ~dangling] / colsum[~dangling]
    E[:, dangling] = 1.0 / n
    return E


def google_matrix(g: Graph | np.ndarray, alpha: float = DEFAULT_ALPHA) -> GoogleMatrixData:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"damping alpha must lie in [0, 1], got {alpha}")
    A = g.adjacency if isinstance(g, Graph) else np.asarray(g, dtype=float)
    n = A.shape[0]
    E = patched_matrix(A)
    G = alpha * E + (1.0 - alpha) / n * np.ones((n, n))
    return GoogleMatrixData(alpha=alpha, E=E, G=G)


def pagerank(g: Graph, alpha: float = DEFAULT_ALPHA) -> CentralityResult:
    """Eigenvalue-1 eigenvector of the Google matrix, normalized to unit sum."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"damping alpha must lie in [0, 1], got {alpha}")
    if alpha == 1.0 and (not g.is_connected() or g.is_bipartite()):
        raise ValueError("alpha = 1 requires a connected, non-bipartite graph")
    G = google_matrix(g, alpha).G
    evals, evecs = np.linalg.eig(G)
    k = int(np.argmin(np.abs(evals - 1.0)))
    x = np.real(evecs[:, k])
    x = x / x.sum()
    resid = np.linalg.norm(G @ x - x)
    if resid > 1e-10:
        raise ArithmeticError(f"PageRank residual {resid:.2e} exceeds 1e-10")
    return CentralityResult("pagerank", x)


def pagerank_series(g: Graph, alpha: float = DEFAULT_ALPHA, k_max: int = 200) -> CentralityResult:
    """Partial sum ``(1-alpha)/N * sum_j sum_{k<=k_max} alpha^k (E^k)_ij``.

    The result is not renormalized: its total mass is ``1 - alpha^(k_max+1)``
    and it differs from :func:`pagerank` by at most ``alpha^(k_max+1)/(1-alpha)``.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"series form needs 0 <= alpha < 1, got {alpha}")
    E = patched_matrix(g.adjacency)
    n = g.n
    term = np.full(n, (1.0 - alpha) / n)
    total = term.copy()
    for _ in range(k_max):
        term = alpha * (E @ term)
        total += term
    return CentralityResult("pagerank_series", total)


def rwc(g: Graph, epsilon: float = DEFAULT_EPSILON) -> CentralityResult:
    """Random walk centrality ``pi_j / tau_j`` of the lazy walk ``eps T + (1-eps) I``.

    The relaxation time ``tau_j = sum_n ((T_eps^n)_jj - pi_j)`` is summed in
    closed form over the non-stationary eigenmodes.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"laziness epsilon must lie in (0, 1], got {epsilon}")
    _require_connected(g, "random walk centrality")
    if epsilon == 1.0 and g.is_bipartite():
        raise NonConvergentSeriesError(
            "relaxation-time series diverges on a bipartite graph with epsilon = 1; use epsilon < 1")
    mu, phi = _symmetric_walk_spectrum(g)
    lam = epsilon * mu + (1.0 - epsilon)
    # connected => eigenvalue 1 is simple and the largest
    stationary = phi[:, -1] ** 2
    weights = phi[:, :-1] ** 2
    tau = weights @ (1.0 / (1.0 - lam[:-1]))
    d = g.degrees.astype(float)
    pi = d / d.sum()
    if not np.allclose(stationary, pi, atol=1e-10):
        raise ArithmeticError("stationary mode does not match the degree distribution")
    return CentralityResult("rwc", pi / tau)
