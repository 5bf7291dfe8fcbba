# coding: utf-8

# # A quantum walker on the 4-star
#
# The walker starts in the equal superposition of all four vertices and
# evolves under the adjacency matrix. Vertex 0 is the centre.

import numpy as np

from qwcentrality import ctqw_centrality, ctqw_centrality_quadrature, spectral_decomposition, star_graph, uniform_state
from qwcentrality.ctqw import probabilities, star_probability_closed_form

g = star_graph(4)
spec = spectral_decomposition(g.adjacency)
print("eigenvalues:", np.round(spec.eigenvalues, 6))
print("degeneracy groups:", spec.degeneracy_groups)

# Occupation probabilities over one period, pi/sqrt(3). The numerical trace
# and the closed form should agree to rounding.

period = np.pi / np.sqrt(3)
ts = np.linspace(0, period, 9)
P = probabilities(spec, uniform_state(4), ts)
print("\n   t      P_centre  P_leaf")
for t, row in zip(ts, P):
    print(f"{t:6.3f}  {row[0]:.5f}  {row[1]:.5f}")
print("max deviation from closed form:", np.abs(P - star_probability_closed_form(ts)).max())

# The centre spends half its time occupied on average; each leaf a sixth.

print("\nlong-time average:", ctqw_centrality(g).scores)

# A brute-force time average converges to the same thing.

for t_max in (period, 10.0, 100.0):
    q = ctqw_centrality_quadrature(g, t_max, 0.01).scores
    print(f"trapezoid average to t={t_max:7.3f}: {np.round(q, 5)}")

# Under the Laplacian the uniform state is stationary, so every vertex gets 1/N.

print("\nLaplacian convention:", ctqw_centrality(g, "laplacian").scores)
