# coding: utf-8

# # Simulated measurements of the star walk
#
# Eight time steps of 9/40, 2250 shots each, ideal multinomial counting.
# The norm-1 distance to the analytic distribution shrinks like 1/sqrt(shots).

import numpy as np

from qwcentrality import run_experiment_simulation, sample_measurement, theoretical_distribution

run = run_experiment_simulation(seed=7)
print(" k  counts                 d")
for r in run.records:
    print(f"{r.k:2d}  {str(r.counts.tolist()):22s} {r.distance:.4f}")

# Routing the propagator through its CSD changes nothing beyond rounding.

routed = run_experiment_simulation(seed=7, route_csd=True)
print("\nCSD route max deviation:", routed.max_route_deviation)
print("analytic mode distances:", run_experiment_simulation(analytic=True).distances)

# Distance against shot count at k = 4.

p = theoretical_distribution(4)
rng = np.random.default_rng(0)
for shots in (100, 1000, 2250, 10000, 100000):
    d = np.mean([sample_measurement(p, shots, rng).distance for _ in range(200)])
    print(f"{shots:7d} shots: mean d = {d:.4f}")
