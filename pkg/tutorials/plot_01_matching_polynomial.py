"""
Matching polynomials of small graphs
====================================

The matching polynomial counts dimer arrangements (partial matchings) with
alternating signs. For a nonnegative weighted graph all of its roots are
real and lie below twice the square root of the largest weighted degree.
"""

import numpy as np

from matsign import heilmann_lieb_bound, largest_real_root, matching_polynomial

# The triangle has three single edges and no pair of disjoint edges,
# so its matching polynomial is x^3 - 3x.
triangle = np.ones((3, 3)) - np.eye(3)
mu = matching_polynomial(triangle)
print("triangle:", mu.coeffs)
print("largest root", largest_real_root(mu), "vs sqrt(3) =", np.sqrt(3))

# The cycle on six vertices. Its weighted degree is 2, so the roots stay
# below 2 * sqrt(2).
n = 6
cycle = np.zeros((n, n))
for i in range(n):
    cycle[i, (i + 1) % n] = cycle[(i + 1) % n, i] = 1.0
mu = matching_polynomial(cycle)
print("6-cycle:", mu.coeffs)
print("largest root", largest_real_root(mu), "<", heilmann_lieb_bound(cycle))

# Random nonnegative weights follow the same bound.
rng = np.random.default_rng(0)
w = np.triu(rng.random((8, 8)), 1)
w = w + w.T
print("random 8x8:", largest_real_root(matching_polynomial(w)), "<", heilmann_lieb_bound(w))
