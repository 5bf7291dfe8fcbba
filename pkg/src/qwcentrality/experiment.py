"""Finite-shot simulation of the star-graph walk measurement.

At each time ``k * dt`` the equal superposition is propagated, measured in
the vertex basis with ideal multinomial counting statistics, and compared
with the analytic distribution through the norm-1 (total variation) distance.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .csd import csd_4x4
from .ctqw import hamiltonian, propagator, spectral_decomposition, star_probability_closed_form, uniform_state
from .graphs import Graph, member_rng, star_graph

__all__ = [
    "DELTA_T",
    "DEFAULT_SHOTS",
    "MeasurementRecord",
    "ExperimentRun",
    "theoretical_distribution",
    "sample_measurement",
    "norm1_distance",
    "run_experiment_simulation",
]

DELTA_T = 9 / 40
# 18000 coincidences split over eight settings
DEFAULT_SHOTS = 2250


def theoretical_distribution(k: int, delta_t: float = DELTA_T) -> np.ndarray:
    """Analytic 4-star occupation probabilities at ``t = k * delta_t``."""
    if k < 0:
        raise ValueError(f"time step index must be non-negative, got {k}")
    return star_probability_closed_form(k * delta_t)[0]


def _check_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or np.any(p < 0) or not np.all(np.isfinite(p)) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("p must be a finite, non-negative vector summing to 1")
    return p


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    k: int
    shots: int
    counts: np.ndarray
    p_theory: np.ndarray

    @property
    def p_hat(self) -> np.ndarray:
        return self.counts / self.shots

    @property
    def errors(self) -> np.ndarray:
        """Poissonian standard error of each outcome frequency."""
        return np.sqrt(self.counts) / self.shots

    @property
    def distance(self) -> float:
        return norm1_distance(self.p_hat, self.p_theory)

    def to_dict(self) -> dict:
        return {"k": self.k, "shots": self.shots, "counts": self.counts.tolist(),
                "p_hat": self.p_hat.tolist(), "p_theory": self.p_theory.tolist(),
                "errors": self.errors.tolist(), "d": self.distance}


def sample_measurement(p, shots: int, rng: np.random.Generator, k: int = 0) -> MeasurementRecord:
    """Multinomial ``shots``-sample of the outcome distribution ``p``."""
    p = _check_distribution(p)
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    counts = rng.multinomial(shots, p / p.sum())
    return MeasurementRecord(k, int(shots), counts.astype(np.int64), p)


def norm1_distance(p_exp, p_th) -> float:
    """``0.5 * sum |p_exp - p_th|``."""
    p_exp, p_th = np.asarray(p_exp, dtype=float), np.asarray(p_th, dtype=float)
    if p_exp.shape != p_th.shape:
        raise ValueError("distributions must have equal length")
    return float(0.5 * np.abs(p_exp - p_th).sum())


@dataclass(frozen=True, eq=False)
class ExperimentRun:
    records: list
    analytic: bool
    route_csd: bool
    seed: int | None
    delta_t: float
    max_route_deviation: float

    @property
    def distances(self) -> list[float]:
        return [r.distance for r in self.records]

    def to_dict(self) -> dict:
        return {"delta_t": self.delta_t, "analytic": self.analytic, "route_csd": self.route_csd,
                "seed": self.seed, "max_route_deviation": self.max_route_deviation,
                "records": [r.to_dict() for r in self.records], "distances": self.distances}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        """One row per (step, outcome), the layout of a grouped bar chart."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "outcome", "count", "p_hat", "p_theory", "error"])
        for r in self.records:
            for x in range(r.counts.size):
                w.writerow([r.k, x, int(r.counts[x]), repr(float(r.p_hat[x])),
                            repr(float(r.p_theory[x])), repr(float(r.errors[x]))])
        return buf.getvalue()


def run_experiment_simulation(g: Graph | None = None, steps: int = 8, delta_t: float = DELTA_T,
                              shots_per_step: int = DEFAULT_SHOTS, seed: int | None = 0,
                              analytic: bool = False, route_csd: bool = False) -> ExperimentRun:
    """Propagate, optionally compile, and sample the walk at ``t = k * delta_t`` for k = 1..steps.

    In analytic mode the "counts" are the exact probabilities scaled by the
    shot number (not rounded), so every distance is zero. Step ``k`` samples
    from ``member_rng(seed, k)``.
    """
    if shots_per_step < 1 or steps < 1:
        raise ValueError(f"need shots >= 1 and steps >= 1, got {shots_per_step} and {steps}")
    g = star_graph(4) if g is None else g
    spec = spectral_decomposition(hamiltonian(g))
    psi0 = uniform_state(g.n).amplitudes
    is_star = g == star_graph(4)
    records = []
    deviation = 0.0
    for k in range(1, steps + 1):
        U = propagator(spec, k * delta_t)
        p_direct = np.abs(U @ psi0) ** 2
        if route_csd:
            U_routed = csd_4x4(U).reconstruct() if U.shape == (4, 4) else U
            p = np.abs(U_routed @ psi0) ** 2
            deviation = max(deviation, float(np.max(np.abs(p - p_direct))))
        else:
            p = p_direct
        p_theory = theoretical_distribution(k, delta_t) if is_star else p_direct
        p = np.clip(p, 0.0, None)
        p = p / p.sum()
        if analytic:
            rec = MeasurementRecord(k, int(shots_per_step), p_theory * shots_per_step, p_theory)
        else:
            rec = sample_measurement(p, shots_per_step, member_rng(seed, k), k)
            rec = MeasurementRecord(k, rec.shots, rec.counts, p_theory)
        records.append(rec)
    return ExperimentRun(records, analytic, route_csd, seed, delta_t, deviation)
