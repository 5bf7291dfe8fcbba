"""Continuous-time quantum walk evolution and long-time-average centrality.

All evolution goes through the eigendecomposition ``H = V diag(lam) V^T`` of
the real symmetric Hamiltonian, so ``U(t) = V exp(-i lam t) V^T``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .graphs import Graph
from .result import CentralityResult

__all__ = [
    "SpectralDecomposition",
    "WalkerState",
    "hamiltonian",
    "spectral_decomposition",
    "uniform_state",
    "evolve",
    "propagator",
    "probabilities",
    "ctqw_centrality",
    "ctqw_centrality_quadrature",
    "star_propagator_closed_form",
    "star_probability_closed_form",
    "write_probability_trace",
    "DEGENERACY_RTOL",
]

DEGENERACY_RTOL = 1e-8

Convention = Literal["adjacency", "laplacian"]


def hamiltonian(g: Graph, convention: Convention = "adjacency") -> np.ndarray:
    """``A`` for the adjacency convention, ``D - A`` for the Laplacian one."""
    if convention == "adjacency":
        return np.array(g.adjacency)
    if convention == "laplacian":
        return g.laplacian
    raise ValueError(f"unknown Hamiltonian convention {convention!r}")


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs of a real symmetric matrix with eigenvalues grouped by degeneracy."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T

    def projectors(self) -> list[np.ndarray]:
        """Orthogonal projectors onto each eigenspace."""
        V = self.eigenvectors
        return [V[:, g] @ V[:, g].T for g in self.degeneracy_groups]


def _group_eigenvalues(evals: np.ndarray, rtol: float) -> tuple[tuple[int, ...], ...]:
    tol = rtol * max(1.0, float(np.max(np.abs(evals))))
    groups = [[0]]
    for k in range(1, evals.size):
        if evals[k] - evals[k - 1] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return tuple(tuple(g) for g in groups)


def spectral_decomposition(H, rtol: float = DEGENERACY_RTOL) -> SpectralDecomposition:
    """Diagonalize ``H``; adjacent eigenvalues closer than ``rtol * max(1, |lam|max)`` are grouped."""
    H = np.asarray(H, dtype=float)
    if not np.allclose(H, H.T, atol=0, rtol=0):
        raise ValueError("Hamiltonian must be exactly symmetric")
    evals, evecs = np.linalg.eigh(H)
    return SpectralDecomposition(evals, evecs, _group_eigenvalues(evals, rtol))


@dataclass(frozen=True, eq=False)
class WalkerState:
    amplitudes: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex, copy=True)
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"walker state must be normalized, got norm {norm}")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def uniform_state(n: int) -> WalkerState:
    """Equal superposition with amplitudes ``1/sqrt(n)``."""
    return WalkerState(np.full(n, 1.0 / np.sqrt(n), dtype=complex))


def propagator(spec: SpectralDecomposition, t: float) -> np.ndarray:
    V = spec.eigenvectors
    return (V * np.exp(-1j * spec.eigenvalues * t)) @ V.T


def evolve(spec: SpectralDecomposition, psi0: WalkerState, t: float) -> WalkerState:
    V = spec.eigenvectors
    coeffs = V.T @ psi0.amplitudes
    return WalkerState(V @ (np.exp(-1j * spec.eigenvalues * t) * coeffs), psi0.time + t)


def probabilities(spec: SpectralDecomposition, psi0: WalkerState, times) -> np.ndarray:
    """Vertex occupation probabilities, one row per entry of ``times``."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    V = spec.eigenvectors
    coeffs = V.T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(times, spec.eigenvalues))
    amps = (phases * coeffs) @ V.T
    return np.abs(amps) ** 2


def ctqw_centrality(g: Graph, convention: Convention = "adjacency",
                    spec: SpectralDecomposition | None = None) -> CentralityResult:
    """Exact infinite-time average of ``|<j|psi(t)>|^2`` from the uniform start.

    Cross terms between distinct eigenvalues average to zero, leaving
    ``C_j = sum_groups |(P_group psi0)_j|^2``.
    """
    if spec is None:
        spec = spectral_decomposition(hamiltonian(g, convention))
    psi0 = uniform_state(g.n).amplitudes.real
    V = spec.eigenvectors
    coeffs = V.T @ psi0
    scores = np.zeros(g.n)
    for group in spec.degeneracy_groups:
        idx = list(group)
        scores += (V[:, idx] @ coeffs[idx]) ** 2
    name = "ctqw" if convention == "adjacency" else "ctqw_laplacian"
    return CentralityResult(name, scores)


def ctqw_centrality_quadrature(g: Graph, t_max: float, dt: float,
                               convention: Convention = "adjacency") -> CentralityResult:
    """Trapezoidal time average of the occupation probabilities over ``[0, t_max]``."""
    H = hamiltonian(g, convention)
    spec = spectral_decomposition(H)
    lam_max = float(np.max(np.abs(spec.eigenvalues)))
    if lam_max > 0 and dt > np.pi / (8 * lam_max):
        raise ValueError(f"dt = {dt} does not resolve the spectrum; need dt <= pi/(8*{lam_max:.4g}) "
                         f"= {np.pi / (8 * lam_max):.4g}")
    psi0 = uniform_state(g.n)
    if t_max <= 0:
        return CentralityResult("ctqw_quadrature", psi0.probabilities)
    steps = max(1, int(np.ceil(t_max / dt - 1e-9)))
    times = np.linspace(0.0, t_max, steps + 1)
    acc = np.zeros(g.n)
    # chunk to bound memory on long windows
    for lo in range(0, times.size, 4096):
        chunk = times[lo:lo + 4096]
        P = probabilities(spec, psi0, chunk)
        w = np.full(chunk.size, 1.0)
        if lo == 0:
            w[0] = 0.5
        if lo + chunk.size == times.size:
            w[-1] = 0.5
        acc += w @ P
    h = times[1] - times[0]
    return CentralityResult("ctqw_quadrature", acc * h / t_max)


def star_propagator_closed_form(t: float) -> np.ndarray:
    """Analytic ``exp(-iAt)`` for the 4-vertex star with centre 0.

    The bottom-right entry is ``(c + 2)/3``; this is forced by symmetry and
    unitarity.
    """
    c = np.cos(np.sqrt(3) * t)
    s = -1j * np.sqrt(3) * np.sin(np.sqrt(3) * t)
    return np.array([
        [3 * c, s, s, s],
        [s, c + 2, c - 1, c - 1],
        [s, c - 1, c + 2, c - 1],
        [s, c - 1, c - 1, c + 2],
    ]) / 3


def star_probability_closed_form(t) -> np.ndarray:
    """Occupation probabilities of the 4-star walk from the uniform start, rows over ``t``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c2 = np.cos(2 * np.sqrt(3) * t)
    centre = 0.5 - 0.25 * c2
    leaf = 1 / 6 + c2 / 12
    return np.column_stack([centre, leaf, leaf, leaf])


def write_probability_trace(path, times, probs) -> None:
    """CSV with header ``t,P_0,...,P_{n-1}``."""
    probs = np.atleast_2d(probs)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"P_{j}" for j in range(probs.shape[1])])
        for t, row in zip(times, probs):
            w.writerow([repr(float(t))] + [repr(float(x)) for x in row])
