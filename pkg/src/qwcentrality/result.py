"""Per-vertex centrality scores and their tie-aware ranking."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["CentralityResult", "tie_groups", "TIE_TOL"]

# scores closer than this (relative to the largest |score|) count as tied
TIE_TOL = 1e-10


def tie_groups(scores, tol: float = TIE_TOL) -> list[list[int]]:
    """Group vertex indices by descending score.

    Consecutive sorted scores within ``tol * max(1, max|score|)`` of the
    group's leading score share a group. Inside a group, indices ascend.
    """
    s = np.asarray(scores, dtype=float)
    if s.size == 0:
        return []
    scale = tol * max(1.0, float(np.max(np.abs(s))))
    order = sorted(range(s.size), key=lambda j: (-s[j], j))
    groups = [[order[0]]]
    lead = s[order[0]]
    for j in order[1:]:
        if lead - s[j] <= scale:
            groups[-1].append(j)
        else:
            groups.append([j])
            lead = s[j]
    return [sorted(g) for g in groups]


@dataclass(frozen=True, eq=False)
class CentralityResult:
    """Scores for every vertex under one centrality measure."""

    measure: str
    scores: np.ndarray

    def __post_init__(self):
        s = np.array(self.scores, dtype=float, copy=True)
        if s.ndim != 1:
            raise ValueError("scores must be one-dimensional")
        if not np.all(np.isfinite(s)):
            raise ValueError(f"{self.measure}: scores must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "scores", s)

    @property
    def groups(self) -> list[list[int]]:
        return tie_groups(self.scores)

    @property
    def ranking(self) -> list[int]:
        """Vertices by descending score; tied vertices in ascending index order."""
        return [j for g in self.groups for j in g]

    def top(self, n: int) -> list[int]:
        return self.ranking[:n]

    def to_dict(self) -> dict:
        return {"measure": self.measure, "scores": self.scores.tolist(), "ranking": self.ranking}

    @classmethod
    def from_dict(cls, d: dict) -> "CentralityResult":
        return cls(d["measure"], np.asarray(d["scores"], dtype=float))
