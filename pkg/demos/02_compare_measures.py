# coding: utf-8

# # Comparing centrality measures on one random graph
#
# Five measures on a connected G(20, 0.3) sample, then their pairwise
# Kendall tau.

import numpy as np

from qwcentrality import GraphEnsembleSpec, correlation_table, member_rng
from qwcentrality.graphs import ensure_connected
from qwcentrality.measures import TABLE1_MEASURES, compute_all

spec = GraphEnsembleSpec("erdos_renyi", 20, p=0.3, seed=5)
g = ensure_connected(spec, member_rng(5, 0))
print(f"{g.n} vertices, {g.num_edges} edges")

results = compute_all(TABLE1_MEASURES, g)
for name, r in results.items():
    print(f"{name:12s} top-5 {r.top(5)}")

# Tau on the score vectors keeps tied vertices tied.

table = correlation_table(g, TABLE1_MEASURES)
print("\ntau (scores)")
print(np.round(table.tau, 3))

# Tau on the ordered vertex lists is what the ensemble table averages.

table = correlation_table(g, TABLE1_MEASURES, compare="ranked_lists")
print("\ntau (ranked lists)")
print(np.round(table.tau, 3))
