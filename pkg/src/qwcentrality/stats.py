"""Rank correlation, top-n agreement and ensemble aggregation.

Ensemble runs draw graph ``i`` from ``member_rng(seed, i)`` and reduce the
per-graph statistics in index order, so results do not depend on how many
worker threads evaluated them.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import UndefinedMeasureError
from .graphs import Graph, GraphEnsembleSpec, member_rng, sample_graph
from .measures import canonical_name, compute_all
from .result import TIE_TOL, CentralityResult

__all__ = [
    "kendall_tau",
    "RankCorrelationMatrix",
    "correlation_table",
    "agreement_factor",
    "agresti_coull_ci",
    "AgreementReport",
    "EnsembleProfile",
    "EnsembleReport",
    "run_ensemble",
    "COMPARE_MODES",
]


def _pair_signs(x: np.ndarray, tol: float) -> np.ndarray:
    i, j = np.triu_indices(x.size, k=1)
    diff = x[i] - x[j]
    thresh = tol * max(1.0, float(np.max(np.abs(x)))) if tol > 0 else 0.0
    s = np.sign(diff).astype(np.int64)
    s[np.abs(diff) <= thresh] = 0
    return s


def kendall_tau(scores_a, scores_b, tol: float = 0.0) -> float:
    """Tie-corrected Kendall tau-b.

    ``(concordant - discordant) / sqrt((n0 - n1) (n0 - n2))`` where ``n0`` is
    the number of pairs and ``n1``, ``n2`` count pairs tied in each list.
    Values within ``tol * max(1, max|x|)`` of each other count as tied.

    Raises
    ------
    UndefinedMeasureError
        If either list is entirely tied.
    """
    a = np.asarray(scores_a, dtype=float)
    b = np.asarray(scores_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("score vectors must be one-dimensional and of equal length")
    if a.size < 2:
        raise ValueError("Kendall tau needs at least two observations")
    sa, sb = _pair_signs(a, tol), _pair_signs(b, tol)
    n0 = sa.size
    n1 = int(np.count_nonzero(sa == 0))
    n2 = int(np.count_nonzero(sb == 0))
    if n1 == n0 or n2 == n0:
        raise UndefinedMeasureError("Kendall tau is undefined when every value in a list is tied")
    s = int(np.dot(sa, sb))
    tau = s / math.sqrt((n0 - n1) * (n0 - n2))
    return min(1.0, max(-1.0, tau))


@dataclass(frozen=True, eq=False)
class RankCorrelationMatrix:
    measures: tuple[str, ...]
    tau: np.ndarray
    std: np.ndarray | None = None

    def __getitem__(self, key):
        a, b = key
        return float(self.tau[self.measures.index(a), self.measures.index(b)])

    def to_dict(self) -> dict:
        d = {"measures": list(self.measures), "tau": self.tau.tolist()}
        if self.std is not None:
            d["std"] = self.std.tolist()
        return d


COMPARE_MODES = ("scores", "ranked_lists")


def _comparison_vector(result: CentralityResult, compare: str) -> np.ndarray:
    if compare == "scores":
        return result.scores
    if compare == "ranked_lists":
        return np.asarray(result.ranking, dtype=float)
    raise ValueError(f"compare must be one of {COMPARE_MODES}, got {compare!r}")


def _tau_matrix(results: dict[str, CentralityResult], names, compare: str = "scores") -> np.ndarray:
    vecs = [_comparison_vector(results[m], compare) for m in names]
    k = len(names)
    tau = np.eye(k)
    for x, y in itertools.combinations(range(k), 2):
        tau[x, y] = tau[y, x] = kendall_tau(vecs[x], vecs[y], tol=TIE_TOL)
    return tau


def correlation_table(g: Graph, measures, compare: str = "scores", **params) -> RankCorrelationMatrix:
    """Pairwise Kendall tau between measures on ``g``.

    With ``compare="scores"`` the tau-b is taken between the score vectors,
    so tied vertices stay tied. With ``compare="ranked_lists"`` it is taken
    between the ordered vertex-index lists (position ``r`` holds the vertex
    ranked ``r``-th). The published ensemble table uses the latter.
    Repeated measure names are allowed and give unit entries.
    """
    names = [canonical_name(m) for m in measures]
    computed = compute_all(dict.fromkeys(names), g, **params)
    return RankCorrelationMatrix(tuple(names), _tau_matrix(computed, names, compare))


def agreement_factor(result_a: CentralityResult, result_b: CentralityResult, n: int) -> float:
    """Fraction of vertices shared by the two top-``n`` sets."""
    size = result_a.scores.size
    if not 1 <= n <= size:
        raise ValueError(f"top-n size must lie in [1, {size}], got {n}")
    return len(set(result_a.top(n)) & set(result_b.top(n))) / n


def agresti_coull_ci(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Agresti-Coull interval for a binomial proportion, clipped to [0, 1]."""
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    n_adj = trials + z * z
    p_adj = (successes + z * z / 2) / n_adj
    half = z * math.sqrt(p_adj * (1 - p_adj) / n_adj)
    return max(0.0, p_adj - half), min(1.0, p_adj + half)


@dataclass(frozen=True, eq=False)
class AgreementReport:
    pairs: tuple[tuple[str, str], ...]
    n_values: tuple[int, ...]
    factors: np.ndarray      # (pair, n)
    successes: np.ndarray    # (pair, n) matched vertices summed over the ensemble
    ci_low: np.ndarray
    ci_high: np.ndarray
    ensemble_size: int

    def factor(self, a: str, b: str, n: int) -> float:
        return float(self.factors[self._pair_index(a, b), self.n_values.index(n)])

    def interval(self, a: str, b: str, n: int) -> tuple[float, float]:
        i, k = self._pair_index(a, b), self.n_values.index(n)
        return float(self.ci_low[i, k]), float(self.ci_high[i, k])

    def _pair_index(self, a, b):
        a, b = canonical_name(a), canonical_name(b)
        for i, p in enumerate(self.pairs):
            if p in ((a, b), (b, a)):
                return i
        raise KeyError(f"pair ({a}, {b}) not in report")

    def rows(self):
        for i, (a, b) in enumerate(self.pairs):
            for k, n in enumerate(self.n_values):
                yield f"{a}-{b}", n, float(self.factors[i, k]), float(self.ci_low[i, k]), float(self.ci_high[i, k])

    def to_dict(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "n_values": list(self.n_values),
            "factors": self.factors.tolist(),
            "successes": self.successes.tolist(),
            "ci_low": self.ci_low.tolist(),
            "ci_high": self.ci_high.tolist(),
            "ensemble_size": self.ensemble_size,
        }


@dataclass(frozen=True, eq=False)
class EnsembleProfile:
    """Rank-aligned mean and standard deviation of each measure's scores."""

    measures: tuple[str, ...]
    mean: np.ndarray   # (measure, rank)
    std: np.ndarray

    def rows(self):
        for i, m in enumerate(self.measures):
            for r in range(self.mean.shape[1]):
                yield r + 1, m, float(self.mean[i, r]), float(self.std[i, r])

    def to_dict(self) -> dict:
        return {"measures": list(self.measures), "mean": self.mean.tolist(), "std": self.std.tolist()}


@dataclass(frozen=True, eq=False)
class EnsembleReport:
    spec: GraphEnsembleSpec
    seed: int
    correlation: RankCorrelationMatrix
    agreement: AgreementReport
    profile: EnsembleProfile
    params: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.correlation, self.agreement, self.profile))

    def to_dict(self) -> dict:
        return {
            "ensemble": {**self.spec.to_dict(), "seed": self.seed},
            "params": self.params,
            "correlation": self.correlation.to_dict(),
            "agreement": self.agreement.to_dict(),
            "profile": self.profile.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def profile_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "measure", "mean", "std"])
        for row in self.profile.rows():
            w.writerow([row[0], row[1], repr(row[2]), repr(row[3])])
        return buf.getvalue()

    def agreement_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pair", "n", "factor", "ci_low", "ci_high"])
        for pair, n, f, lo, hi in self.agreement.rows():
            w.writerow([pair, n, repr(f), repr(lo), repr(hi)])
        return buf.getvalue()


def _member(spec, names, pairs, n_values, seed, index, compare, params):
    g = sample_graph(spec, member_rng(seed, index))
    results = compute_all(names, g, **params)
    tau = _tau_matrix(results, names, compare)
    matches = np.array([[len(set(results[a].top(n)) & set(results[b].top(n))) for n in n_values]
                        for a, b in pairs], dtype=np.int64)
    profile = np.stack([np.sort(results[m].scores)[::-1] for m in names])
    return tau, matches, profile


def run_ensemble(spec: GraphEnsembleSpec, measures, n_values=(1, 2, 3, 4, 5), seed: int | None = None,
                 pairs=None, threads: int = 1, compare: str = "scores", **params) -> EnsembleReport:
    """Evaluate ``measures`` over ``spec.count`` seeded graphs and aggregate.

    ``pairs`` defaults to every unordered pair of measures. Agreement
    intervals pool each top-n slot of each graph as one Bernoulli trial.
    ``compare`` selects the Kendall tau input, see :func:`correlation_table`.
    """
    if compare not in COMPARE_MODES:
        raise ValueError(f"compare must be one of {COMPARE_MODES}, got {compare!r}")
    names = tuple(dict.fromkeys(canonical_name(m) for m in measures))
    if pairs is None:
        pairs = tuple(itertools.combinations(names, 2))
    else:
        pairs = tuple((canonical_name(a), canonical_name(b)) for a, b in pairs)
    n_values = tuple(int(n) for n in n_values)
    if any(not 1 <= n <= spec.n for n in n_values):
        raise ValueError(f"top-n sizes must lie in [1, {spec.n}]")
    seed = spec.seed if seed is None else int(seed)

    def work(i):
        return _member(spec, names, pairs, n_values, seed, i, compare, params)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            members = list(pool.map(work, range(spec.count)))
    else:
        members = [work(i) for i in range(spec.count)]

    taus = np.stack([m[0] for m in members])
    matches = np.stack([m[1] for m in members])
    profiles = np.stack([m[2] for m in members])
    count = spec.count

    successes = matches.sum(axis=0)
    trials = np.array(n_values)[None, :] * count
    factors = successes / trials
    lo = np.empty_like(factors)
    hi = np.empty_like(factors)
    for idx in np.ndindex(factors.shape):
        lo[idx], hi[idx] = agresti_coull_ci(int(successes[idx]), int(trials[0, idx[1]]))

    correlation = RankCorrelationMatrix(names, taus.mean(axis=0), taus.std(axis=0))
    agreement = AgreementReport(pairs, n_values, factors, successes, lo, hi, count)
    profile = EnsembleProfile(names, profiles.mean(axis=0), profiles.std(axis=0))
    return EnsembleReport(spec, seed, correlation, agreement, profile, {**params, "compare": compare})
