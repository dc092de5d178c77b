"""
Greedy descent to a good symmetric signing
==========================================

At every free position keep the child whose largest root is smaller.
The roots along the path never go up, so the leaf beats the root of the
matching polynomial.
"""

import numpy as np

from matsign import brute_force_min_lambda_max, greedy_symmetric_signing

triangle = np.ones((3, 3)) - np.eye(3)
s, cert = greedy_symmetric_signing(triangle)
print(s)
print("roots along the path:", np.round(cert.descent_roots, 6))
print("achieved top eigenvalue:", cert.achieved_lambda_max)
print("best possible:", brute_force_min_lambda_max(triangle)[1])

rng = np.random.default_rng(2)
a = rng.uniform(-1, 1, (6, 6))
a = np.triu(a, 1) + np.triu(a, 1).T
s, cert = greedy_symmetric_signing(a)
print("random 6x6: top eigenvalue", round(cert.achieved_lambda_max, 4),
      "<= matching root", round(cert.mu_max_root, 4))
