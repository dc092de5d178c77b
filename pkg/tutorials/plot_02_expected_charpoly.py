"""
Averaging characteristic polynomials over random signs
======================================================

Flip the sign of every symmetric pair of entries of ``A`` independently
at random. The expected characteristic polynomial is the matching
polynomial of ``A o A``. Fixing some signs gives a conditional
expectation, and each node of the signing tree is the average of its two
children.
"""

import numpy as np

from matsign import (
    PartialSigning,
    conditional_expected_charpoly,
    exact_average_charpoly,
    matching_polynomial,
)

rng = np.random.default_rng(1)
a = rng.uniform(-1, 1, (4, 4))
a = np.triu(a, 1) + np.triu(a, 1).T

# Brute force over all 2^6 signings against the matching polynomial.
print("enumerated average:", exact_average_charpoly(a).coeffs)
print("matching poly of A o A:", matching_polynomial(a * a).coeffs)

# Walk down one branch of the tree and check the averaging property.
ps = PartialSigning.free(a)
while not ps.is_complete:
    parent = conditional_expected_charpoly(a, ps)
    plus = conditional_expected_charpoly(a, ps.fix(1))
    minus = conditional_expected_charpoly(a, ps.fix(-1))
    gap = np.max(np.abs((parent - 0.5 * (plus + minus)).coeffs))
    print(f"{ps.n_free} free, parent vs mean of children: {gap:.1e}")
    ps = ps.fix(1)
