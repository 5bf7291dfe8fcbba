import math

import numpy as np
import pytest
from scipy import stats

from qwcentrality.errors import GraphGenerationError
from qwcentrality.graphs import (
    Graph,
    GraphEnsembleSpec,
    build_graph,
    complete_graph,
    ensure_connected,
    generate_barabasi_albert,
    generate_erdos_renyi,
    member_rng,
    sample_graph,
)


def test_build_star_matches_published_adjacency():
    g = build_graph({(0, 1), (0, 2), (0, 3)}, 4)
    expected = np.array([[0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]])
    np.testing.assert_array_equal(g.adjacency, expected)


def test_build_empty_and_duplicates():
    np.testing.assert_array_equal(build_graph([], 3).adjacency, np.zeros((3, 3)))
    g = build_graph([(0, 1), (1, 0)], 2)
    assert g.adjacency[0, 1] == 1 and g.num_edges == 1


@pytest.mark.parametrize("edges,n", [([(0, 4)], 4), ([(-1, 2)], 4), ([(2, 2)], 4)])
def test_build_rejects_bad_edges(edges, n):
    with pytest.raises(ValueError):
        build_graph(edges, n)


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[0, 2], [2, 0]]))


def test_degree_data(star4):
    np.testing.assert_array_equal(star4.degrees, [3, 1, 1, 1])
    np.testing.assert_array_equal(star4.degree_matrix, np.diag([3.0, 1, 1, 1]))


def test_er_extremes(rng):
    assert generate_erdos_renyi(4, 0.0, rng).num_edges == 0
    assert generate_erdos_renyi(4, 1.0, rng) == complete_graph(4)
    with pytest.raises(ValueError):
        generate_erdos_renyi(4, 1.5, rng)


def _is_simple(g):
    a = g.adjacency
    return np.array_equal(a, a.T) and not np.any(np.diag(a)) and np.all((a == 0) | (a == 1))


def test_generator_outputs_are_simple_graphs():
    for i in range(1000):
        rng = member_rng(5, i)
        assert _is_simple(generate_erdos_renyi(15, 0.3, rng))
        assert _is_simple(generate_barabasi_albert(15, 2, rng))


def test_er_edge_count_mean():
    counts = np.array([generate_erdos_renyi(100, 0.3, member_rng(1, i)).num_edges for i in range(1000)])
    pairs = 100 * 99 // 2
    sd = math.sqrt(pairs * 0.3 * 0.7)
    # mean of 1000 samples: standard error sd / sqrt(1000)
    assert abs(counts.mean() - 0.3 * pairs) < 3 * sd
    assert abs(counts.mean() - 0.3 * pairs) < 4 * sd / math.sqrt(1000)


def test_er_edge_count_binomial_goodness_of_fit():
    n, p = 30, 0.2
    pairs = n * (n - 1) // 2
    counts = np.array([generate_erdos_renyi(n, p, member_rng(2, i)).num_edges for i in range(1000)])
    # bins: quantile edges of Binomial(pairs, p) so each holds ~10% mass
    edges = [int(stats.binom.ppf(q, pairs, p)) for q in np.linspace(0.1, 0.9, 9)]
    bounds = [-1] + edges + [pairs]
    observed = np.array([np.sum((counts > lo) & (counts <= hi)) for lo, hi in zip(bounds[:-1], bounds[1:])])
    expected = np.array([stats.binom.cdf(hi, pairs, p) - stats.binom.cdf(lo, pairs, p)
                         for lo, hi in zip(bounds[:-1], bounds[1:])]) * counts.size
    assert stats.chisquare(observed, expected).pvalue > 0.001


def test_ba_seed_clique_only(rng):
    assert generate_barabasi_albert(3, 2, rng) == complete_graph(3)


@pytest.mark.parametrize("n,m", [(100, 2), (50, 1), (40, 5), (6, 5)])
def test_ba_edge_count_closed_form(n, m):
    for i in range(20):
        g = generate_barabasi_albert(n, m, member_rng(3, i))
        # independent tally: count from the edge list
        assert len(g.edges()) == m * (n - m - 1) + (m + 1) * m // 2
        assert g.is_connected()


def test_ba_100_2_has_197_edges():
    assert generate_barabasi_albert(100, 2, member_rng(0)).num_edges == 3 + 2 * 97


def test_ba_rejects_bad_m(rng):
    with pytest.raises(ValueError):
        generate_barabasi_albert(4, 4, rng)


def test_ba_degree_tail_power_law():
    degs = np.concatenate([generate_barabasi_albert(100, 2, member_rng(4, i)).degrees for i in range(200)])
    k = np.arange(3, 21)
    freq = np.array([np.mean(degs == kk) for kk in k])
    slope = np.polyfit(np.log(k[freq > 0]), np.log(freq[freq > 0]), 1)[0]
    assert -3.5 <= slope <= -2.0


def test_same_seed_bit_identical():
    a = generate_erdos_renyi(30, 0.3, member_rng(9, 4))
    b = generate_erdos_renyi(30, 0.3, member_rng(9, 4))
    assert a.adjacency.tobytes() == b.adjacency.tobytes()
    c = generate_barabasi_albert(30, 2, member_rng(9, 4))
    d = generate_barabasi_albert(30, 2, member_rng(9, 4))
    assert c.adjacency.tobytes() == d.adjacency.tobytes()
    assert generate_erdos_renyi(30, 0.3, member_rng(9, 5)) != a


def test_ensure_connected_er():
    spec = GraphEnsembleSpec("erdos_renyi", 20, p=0.3)
    assert ensure_connected(spec, member_rng(0)).is_connected()


def test_ensure_connected_ba_first_sample():
    spec = GraphEnsembleSpec("barabasi_albert", 30, m=2)
    assert ensure_connected(spec, member_rng(1)) == generate_barabasi_albert(30, 2, member_rng(1))


def test_ensure_connected_gives_up():
    spec = GraphEnsembleSpec("erdos_renyi", 10, p=0.0)
    with pytest.raises(GraphGenerationError, match="G\\(10, 0.0\\)"):
        ensure_connected(spec, member_rng(0), max_tries=50)


def test_er_connectivity_probability_monte_carlo():
    # G(20, 0.3) is connected with high probability; retries stay rare
    spec = GraphEnsembleSpec("erdos_renyi", 20, p=0.3, require_connected=False)
    frac = np.mean([sample_graph(spec, member_rng(7, i)).is_connected() for i in range(500)])
    assert frac > 0.9


def test_spec_validation():
    with pytest.raises(ValueError):
        GraphEnsembleSpec("erdos_renyi", 10, m=2)
    with pytest.raises(ValueError):
        GraphEnsembleSpec("barabasi_albert", 10, p=0.3)
    with pytest.raises(ValueError):
        GraphEnsembleSpec("erdos_renyi", 10, p=0.3, count=0)
