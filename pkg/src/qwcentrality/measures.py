"""Name-based access to every centrality measure."""
from __future__ import annotations

from typing import Callable

from . import classical, ctqw
from .graphs import Graph
from .result import CentralityResult

__all__ = ["MEASURES", "TABLE1_MEASURES", "compute", "compute_all", "canonical_name"]


def _pagerank(g: Graph, alpha: float = classical.DEFAULT_ALPHA, **_) -> CentralityResult:
    return classical.pagerank(g, alpha)


def _rwc(g: Graph, epsilon: float = classical.DEFAULT_EPSILON, **_) -> CentralityResult:
    return classical.rwc(g, epsilon)


MEASURES: dict[str, Callable[..., CentralityResult]] = {
    "degree": lambda g, **_: classical.degree_centrality(g),
    "pagerank": _pagerank,
    "eigenvector": lambda g, **_: classical.eigenvector_centrality(g),
    "ctqw": lambda g, **_: ctqw.ctqw_centrality(g),
    "rwc": _rwc,
    "dtrw": lambda g, **_: classical.dtrw_limit(g),
    "ctrw": lambda g, **_: classical.ctrw_limit(g),
}

# column order of the published comparison table
TABLE1_MEASURES = ("degree", "pagerank", "eigenvector", "ctqw", "rwc")

_ALIASES = {"deg": "degree", "pr": "pagerank", "evec": "eigenvector", "ev": "eigenvector"}


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in MEASURES:
        raise ValueError(f"unknown measure {name!r}; choose from {sorted(MEASURES)}")
    return key


def compute(name: str, g: Graph, **params) -> CentralityResult:
    return MEASURES[canonical_name(name)](g, **params)


def compute_all(names, g: Graph, **params) -> dict[str, CentralityResult]:
    return {canonical_name(n): compute(n, g, **params) for n in names}
