import numpy as np
import pytest
from scipy.linalg import expm

from qwcentrality.ctqw import (
    WalkerState,
    ctqw_centrality,
    ctqw_centrality_quadrature,
    evolve,
    hamiltonian,
    probabilities,
    propagator,
    spectral_decomposition,
    star_probability_closed_form,
    star_propagator_closed_form,
    uniform_state,
    write_probability_trace,
)
from qwcentrality.graphs import build_graph, complete_graph
from qwcentrality.ctqw import SpectralDecomposition

PERIOD = np.pi / np.sqrt(3)


def test_hamiltonian_conventions(star4):
    np.testing.assert_array_equal(hamiltonian(star4)[0], [0, 1, 1, 1])
    np.testing.assert_array_equal(hamiltonian(star4, "laplacian"), np.diag([3, 1, 1, 1]) - star4.adjacency)
    empty = build_graph([], 3)
    assert not hamiltonian(empty).any() and not hamiltonian(empty, "laplacian").any()
    with pytest.raises(ValueError):
        hamiltonian(star4, "other")


def test_spectral_invariants(er_graphs):
    for g in er_graphs[:20]:
        spec = spectral_decomposition(g.adjacency)
        V = spec.eigenvectors
        assert np.linalg.norm(spec.reconstruct() - g.adjacency) <= 1e-10
        assert np.linalg.norm(V.T @ V - np.eye(g.n)) <= 1e-10
        flat = sorted(i for grp in spec.degeneracy_groups for i in grp)
        assert flat == list(range(g.n))


def test_star_degeneracy_groups(star4):
    spec = spectral_decomposition(star4.adjacency)
    sizes = [len(g) for g in spec.degeneracy_groups]
    assert sizes == [1, 2, 1]  # -sqrt3, double 0, +sqrt3
    np.testing.assert_allclose(spec.eigenvalues[[0, 3]], [-np.sqrt(3), np.sqrt(3)], atol=1e-12)


def test_evolve_identity_at_zero(star4):
    spec = spectral_decomposition(star4.adjacency)
    psi = uniform_state(4)
    np.testing.assert_allclose(evolve(spec, psi, 0.0).amplitudes, psi.amplitudes, atol=1e-15)


def test_star_probability_trace(star4):
    spec = spectral_decomposition(star4.adjacency)
    ts = np.linspace(0, 10, 101)
    P = probabilities(spec, uniform_state(4), ts)
    np.testing.assert_allclose(P, star_probability_closed_form(ts), atol=1e-12)
    for t in (0.3, 1.7, 4.2):
        np.testing.assert_allclose(evolve(spec, uniform_state(4), t).probabilities,
                                   star_probability_closed_form(t)[0], atol=1e-12)


def test_star_propagator_closed_form(star4, rng):
    spec = spectral_decomposition(star4.adjacency)
    for t in rng.uniform(0, 10, 100):
        np.testing.assert_allclose(propagator(spec, t), star_propagator_closed_form(t), atol=1e-10)
        np.testing.assert_allclose(propagator(spec, t), expm(-1j * star4.adjacency * t), atol=1e-10)


def test_printed_corner_entry_is_not_unitary():
    # the printed (4,4) entry c+1 breaks unitarity; c+2 restores it
    U = star_propagator_closed_form(0.8)
    bad = U.copy()
    bad[3, 3] = (np.cos(np.sqrt(3) * 0.8) + 1) / 3
    assert np.linalg.norm(U.conj().T @ U - np.eye(4)) < 1e-12
    assert np.linalg.norm(bad.conj().T @ bad - np.eye(4)) > 0.1


def test_propagator_unitary_and_semigroup(er_graphs):
    spec = spectral_decomposition(er_graphs[0].adjacency)
    U1, U2 = propagator(spec, 0.7), propagator(spec, 1.9)
    assert np.linalg.norm(U1.conj().T @ U1 - np.eye(20)) <= 1e-10
    np.testing.assert_allclose(U1 @ U2, propagator(spec, 2.6), atol=1e-10)
    np.testing.assert_allclose(propagator(spec, 0.0), np.eye(20), atol=1e-14)


def test_norm_conservation_and_time_reversal(er_graphs, rng):
    for g in er_graphs:
        spec = spectral_decomposition(g.adjacency)
        psi0 = uniform_state(g.n)
        for t in rng.uniform(0, 100, 5):
            psi = evolve(spec, psi0, t)
            assert abs(np.linalg.norm(psi.amplitudes) - 1) <= 1e-10
            back = evolve(spec, psi, -t)
            np.testing.assert_allclose(back.amplitudes, psi0.amplitudes, atol=1e-9)


def test_walker_state_requires_normalization():
    with pytest.raises(ValueError):
        WalkerState(np.ones(3))


def test_ctqw_star_and_complete(star4):
    np.testing.assert_allclose(ctqw_centrality(star4).scores, [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-9)
    for n in (3, 5, 8):
        np.testing.assert_allclose(ctqw_centrality(complete_graph(n)).scores, 1 / n, atol=1e-12)


def test_ctqw_scores_are_probabilities(er_graphs):
    for g in er_graphs:
        s = ctqw_centrality(g).scores
        assert abs(s.sum() - 1) < 1e-9 and np.all(s >= 0)


def test_laplacian_walk_is_stationary(er_graphs, star4):
    for g in [star4] + er_graphs[:20]:
        np.testing.assert_allclose(ctqw_centrality(g, "laplacian").scores, 1 / g.n, atol=1e-12)
        spec = spectral_decomposition(hamiltonian(g, "laplacian"))
        P = probabilities(spec, uniform_state(g.n), [0.5, 3.0, 17.0])
        np.testing.assert_allclose(P, 1 / g.n, atol=1e-12)


def _rotate_degenerate_blocks(spec, rng):
    V = spec.eigenvectors.copy()
    for grp in spec.degeneracy_groups:
        if len(grp) > 1:
            idx = list(grp)
            q, _ = np.linalg.qr(rng.standard_normal((len(idx), len(idx))))
            V[:, idx] = V[:, idx] @ q
    return SpectralDecomposition(spec.eigenvalues, V, spec.degeneracy_groups)


# two triangles plus an edge: the uniform state overlaps the double eigenvalue 2
SPLIT_GRAPH_EDGES = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7)]


def test_long_time_average_basis_independent(star4, rng):
    graphs = [star4, complete_graph(6), build_graph(SPLIT_GRAPH_EDGES, 8)]
    for g in graphs:
        spec = spectral_decomposition(g.adjacency)
        base = ctqw_centrality(g, spec=spec).scores
        for _ in range(5):
            rotated = ctqw_centrality(g, spec=_rotate_degenerate_blocks(spec, rng)).scores
            assert np.max(np.abs(rotated - base)) <= 1e-9


def test_degeneracy_grouping_is_needed():
    g = build_graph(SPLIT_GRAPH_EDGES, 8)
    spec = spectral_decomposition(g.adjacency)
    np.testing.assert_allclose(ctqw_centrality(g, spec=spec).scores, 1 / 8, atol=1e-12)
    # rotate the eigenvalue-2 pair by 30 degrees, then drop the grouping
    pair = next(grp for grp in spec.degeneracy_groups if np.isclose(spec.eigenvalues[grp[0]], 2.0))
    V = spec.eigenvectors.copy()
    u1 = np.r_[1, 1, 1, 0, 0, 0, 0, 0] / np.sqrt(3)
    u2 = np.r_[0, 0, 0, 1, 1, 1, 0, 0] / np.sqrt(3)
    c, s = np.cos(np.pi / 6), np.sin(np.pi / 6)
    V[:, pair[0]], V[:, pair[1]] = c * u1 + s * u2, -s * u1 + c * u2
    singletons = tuple((k,) for k in range(g.n))
    naive = ctqw_centrality(g, spec=SpectralDecomposition(spec.eigenvalues, V, singletons))
    assert np.max(np.abs(naive.scores - 1 / 8)) > 1e-2


def test_quadrature_one_period(star4):
    r = ctqw_centrality_quadrature(star4, PERIOD, PERIOD / 1000)
    np.testing.assert_allclose(r.scores, [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-6)


def test_quadrature_zero_window(star4):
    np.testing.assert_allclose(ctqw_centrality_quadrature(star4, 0.0, 0.01).scores, 0.25, atol=1e-15)


def test_quadrature_rejects_coarse_step(star4):
    with pytest.raises(ValueError, match="pi/\\(8"):
        ctqw_centrality_quadrature(star4, 10.0, 0.5)


def test_quadrature_matches_spectral_random(er_graphs):
    for g in er_graphs[:5]:
        q = ctqw_centrality_quadrature(g, 200.0, 0.01).scores
        assert np.max(np.abs(q - ctqw_centrality(g).scores)) <= 1e-3


def test_quadrature_error_shrinks_with_window(er_graphs):
    for g in er_graphs[:5]:
        exact = ctqw_centrality(g).scores
        errs = [np.max(np.abs(ctqw_centrality_quadrature(g, T, 0.01).scores - exact)) for T in (10, 50, 200)]
        assert errs[1] <= 2 * errs[0] and errs[2] <= 2 * errs[1]
        assert errs[2] < errs[0]


def test_probability_trace_csv(tmp_path, star4):
    spec = spectral_decomposition(star4.adjacency)
    ts = np.linspace(0, PERIOD, 5)
    P = probabilities(spec, uniform_state(4), ts)
    path = tmp_path / "trace.csv"
    write_probability_trace(path, ts, P)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,P_0,P_1,P_2,P_3"
    back = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(back[:, 1:], P)
