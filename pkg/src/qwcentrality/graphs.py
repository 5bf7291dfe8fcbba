"""Undirected simple graphs and seeded random-graph generators.

Randomness contract
-------------------
Every generator takes an explicit :class:`numpy.random.Generator`. Ensemble
members get independent streams from :func:`member_rng`, which builds a
PCG64 generator from ``SeedSequence(seed, spawn_key=(index,))``. The stream
for graph ``index`` therefore depends only on ``(seed, index)``, never on the
order in which members are generated.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from .errors import GraphGenerationError

__all__ = [
    "Graph",
    "GraphEnsembleSpec",
    "GraphGenerationError",
    "build_graph",
    "star_graph",
    "complete_graph",
    "path_graph",
    "generate_erdos_renyi",
    "generate_barabasi_albert",
    "ensure_connected",
    "sample_graph",
    "member_rng",
    "MAX_CONNECT_RETRIES",
]

MAX_CONNECT_RETRIES = 10_000


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph stored as a symmetric 0/1 adjacency matrix.

    The adjacency array is copied on construction and marked read-only.
    """

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("adjacency entries must be exactly 0 or 1")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency must have a zero diagonal (no self-loops)")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        """Integer vertex degrees, ``degrees[j] = sum_i A[i, j]``."""
        return self.adjacency.sum(axis=0).astype(np.int64)

    @property
    def degree_matrix(self) -> np.ndarray:
        return np.diag(self.degrees.astype(float))

    @property
    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian ``D - A``."""
        return self.degree_matrix - self.adjacency

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum() // 2)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs with ``i < j`` in lexicographic order."""
        iu, ju = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(i), int(j)) for i, j in zip(iu, ju)]

    def is_connected(self) -> bool:
        n = self.n
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in np.flatnonzero(self.adjacency[v]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        return bool(seen.all())

    def is_bipartite(self) -> bool:
        colour = np.full(self.n, -1)
        for start in range(self.n):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in np.flatnonzero(self.adjacency[v]):
                    if colour[w] < 0:
                        colour[w] = 1 - colour[v]
                        queue.append(w)
                    elif colour[w] == colour[v]:
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


def build_graph(edges: Iterable[tuple[int, int]], n: int) -> Graph:
    """Build a graph on ``n`` vertices from an edge list.

    Duplicate pairs, in either orientation, collapse to a single edge.

    Raises
    ------
    ValueError
        If an endpoint lies outside ``[0, n)`` or a pair is a self-loop.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    a = np.zeros((n, n))
    for pair in edges:
        i, j = (int(x) for x in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) has an endpoint outside [0, {n})")
        if i == j:
            raise ValueError(f"self-loop ({i}, {j}) is not allowed in a simple graph")
        a[i, j] = a[j, i] = 1.0
    return Graph(a)


def star_graph(n: int = 4) -> Graph:
    """Star on ``n`` vertices with vertex 0 at the centre."""
    return build_graph([(0, j) for j in range(1, n)], n)


def complete_graph(n: int) -> Graph:
    return Graph(np.ones((n, n)) - np.eye(n))


def path_graph(n: int) -> Graph:
    return build_graph([(j, j + 1) for j in range(n - 1)], n)


def member_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent PCG64 stream for ensemble member ``index`` under ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def generate_erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p): each of the n(n-1)/2 vertex pairs is an edge independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    a = np.zeros((n, n))
    a[iu[keep], ju[keep]] = 1.0
    return Graph(a + a.T)


def generate_barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential-attachment graph grown from a complete seed graph on ``m + 1`` vertices.

    Each new vertex joins ``m`` distinct existing vertices, chosen with
    probability proportional to their current degree. The result always has
    ``m(m+1)/2 + m(n-m-1)`` edges and is connected.
    """
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    a = np.zeros((n, n))
    seed_size = m + 1
    a[:seed_size, :seed_size] = 1.0 - np.eye(seed_size)
    # each vertex appears once per incident edge end
    endpoints = [v for v in range(seed_size) for _ in range(m)]
    for new in range(seed_size, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(endpoints[rng.integers(len(endpoints))])
        for t in sorted(targets):
            a[new, t] = a[t, new] = 1.0
            endpoints.append(t)
        endpoints.extend([new] * m)
    return Graph(a)


@dataclass(frozen=True)
class GraphEnsembleSpec:
    """Parameters of a seeded random-graph ensemble."""

    kind: Literal["erdos_renyi", "barabasi_albert"]
    n: int
    count: int = 1
    seed: int = 0
    p: float | None = None
    m: int | None = None
    require_connected: bool = True
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("ensemble count must be at least 1")
        if self.kind == "erdos_renyi":
            if self.p is None or self.m is not None:
                raise ValueError("Erdos-Renyi ensembles take p and not m")
            if not 0.0 <= self.p <= 1.0:
                raise ValueError(f"edge probability must lie in [0, 1], got {self.p}")
        elif self.kind == "barabasi_albert":
            if self.m is None or self.p is not None:
                raise ValueError("Barabasi-Albert ensembles take m and not p")
            if not 1 <= self.m < self.n:
                raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        else:
            raise ValueError(f"unknown graph kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "erdos_renyi":
            return f"G({self.n}, {self.p})"
        return f"BA({self.n}, m={self.m})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "count": self.count, "seed": self.seed,
             "require_connected": self.require_connected}
        if self.kind == "erdos_renyi":
            d["p"] = self.p
        else:
            d["m"] = self.m
        return d


def _draw(spec: GraphEnsembleSpec, rng: np.random.Generator) -> Graph:
    if spec.kind == "erdos_renyi":
        return generate_erdos_renyi(spec.n, spec.p, rng)
    return generate_barabasi_albert(spec.n, spec.m, rng)


def ensure_connected(spec: GraphEnsembleSpec, rng: np.random.Generator,
                     max_tries: int = MAX_CONNECT_RETRIES) -> Graph:
    """Draw from ``spec`` until a connected graph appears."""
    if spec.kind == "barabasi_albert":
        return _draw(spec, rng)
    for _ in range(max_tries):
        g = _draw(spec, rng)
        if g.is_connected():
            return g
    raise GraphGenerationError(
        f"no connected sample of {spec.describe()} after {max_tries} attempts")


def sample_graph(spec: GraphEnsembleSpec, rng: np.random.Generator) -> Graph:
    if spec.require_connected:
        return ensure_connected(spec, rng)
    return _draw(spec, rng)
