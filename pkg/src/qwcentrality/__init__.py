"""Quantum-walk vertex centrality with classical baselines, ensemble statistics,
a cosine-sine unitary compiler and a finite-shot measurement simulator."""

__version__ = "0.1.0"

from .classical import (
    degree_centrality,
    ctrw_limit,
    dtrw_limit,
    eigenvector_centrality,
    lazy_step,
    pagerank,
    pagerank_series,
    rwc,
)
from .csd import csd, csd_4x4, csd_recursive, to_two_qubit_form
from .ctqw import (
    ctqw_centrality,
    ctqw_centrality_quadrature,
    evolve,
    hamiltonian,
    propagator,
    spectral_decomposition,
    uniform_state,
)
from .experiment import norm1_distance, run_experiment_simulation, sample_measurement, theoretical_distribution
from .graphs import (
    Graph,
    GraphEnsembleSpec,
    build_graph,
    complete_graph,
    generate_barabasi_albert,
    generate_erdos_renyi,
    member_rng,
    path_graph,
    star_graph,
)
from .result import CentralityResult
from .stats import agreement_factor, agresti_coull_ci, correlation_table, kendall_tau, run_ensemble

__all__ = [
    "__version__",
    "degree_centrality",
    "ctrw_limit",
    "dtrw_limit",
    "eigenvector_centrality",
    "lazy_step",
    "pagerank",
    "pagerank_series",
    "rwc",
    "csd",
    "csd_4x4",
    "csd_recursive",
    "to_two_qubit_form",
    "ctqw_centrality",
    "ctqw_centrality_quadrature",
    "evolve",
    "hamiltonian",
    "propagator",
    "spectral_decomposition",
    "uniform_state",
    "norm1_distance",
    "run_experiment_simulation",
    "sample_measurement",
    "theoretical_distribution",
    "Graph",
    "GraphEnsembleSpec",
    "build_graph",
    "complete_graph",
    "generate_barabasi_albert",
    "generate_erdos_renyi",
    "member_rng",
    "path_graph",
    "star_graph",
    "CentralityResult",
    "agreement_factor",
    "agresti_coull_ci",
    "correlation_table",
    "kendall_tau",
    "run_ensemble",
]
