"""Tie points and the singleton dichotomy.

A set whose every query has a unique farthest point would be remarkably
rigid; for finite sets with two or more points, tie queries always exist.
This script finds one by bisection, shows the farthest-distance function
losing differentiability exactly there, and contrasts the singleton case,
where labels are constant and the shift function stays convex.
"""

import numpy as np

from bregfar import (GridSpec, MultivaluedGradient, PointSet, energy,
                     find_tie, gradient_farthest_distance, left_distances,
                     rasterize_field, shannon, theta_convexity_falsifier,
                     theta_midpoint_scan)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("Locating a tie between two labels")
f = shannon(2)
C = PointSet(np.array([[1.0, 1.0], [3.0, 1.0]]), f)
witness = find_tie(f, C, np.array([0.5, 1.0]), np.array([3.5, 1.0]))
print("tie location:", np.round(witness.location, 12))
print("top gap:", witness.top_gap, " tied pair:", witness.pair)
print("distances there:", left_distances(f, C, witness.location))

banner("The farthest distance is kinked at the tie")
try:
    gradient_farthest_distance(f, C, np.asarray(witness.location))
except MultivaluedGradient as exc:
    print("gradient query correctly refused:", exc)

off_tie = np.array([2.5, 1.0])
res = gradient_farthest_distance(f, C, off_tie)
print("one step away the gradient exists:", np.round(res.gradient, 6),
      f"(finite-difference agreement {res.rel_err:.1e})")

banner("Non-singleton sets fail midpoint convexity of the shift function")
search = theta_convexity_falsifier(f, C, seed=7)
print("violation found:", search.found, " gap:", f"{search.gap:.3e}",
      " trials used:", search.trials_used)

banner("Singleton sets are the convex, everywhere-unique case")
single = PointSet(np.array([[1.5, 1.5]]), f)
grid = GridSpec(np.array([0.1, 0.1]), np.array([3.0, 3.0]), (61, 61))
raster = rasterize_field(f, single, grid)
print("grid nodes with a unique farthest point:",
      int(np.count_nonzero(raster.tie_counts == 1)), "of",
      raster.nodes.shape[0])
worst, _, used = theta_midpoint_scan(f, single, seed=7, trials=3000)
print(f"worst shift-function midpoint gap over {used} trials: {worst:.3e}")

banner("The energy picture: ties live on the classical bisector")
fe = energy(2)
Ce = PointSet(np.array([[0.0, 0.0], [2.0, 0.0]]), fe)
tie = find_tie(fe, Ce, np.array([-1.0, 0.5]), np.array([3.0, 0.5]))
print("tie for the euclidean case lands on x1 = 1:",
      np.round(tie.location, 12))
