"""
Signing a rectangular matrix
============================

For an ``m x n`` matrix, sign its dilation ``[[0, A], [A^T, 0]]`` and read
the top-right block. The resulting norm is at most twice the larger of
the largest row and column norms of ``A``.
"""

import numpy as np

from matsign import audit, brute_force_min_norm, sign_rectangular, verify_schur_identity

a = np.ones((2, 2))
s2, cert = sign_rectangular(a)
print(s2)
print(f"{cert.achieved_norm:.8f} <= {cert.mu_max_root:.8f} <= {2 * cert.dilation_linf_l2:.8f}")

rng = np.random.default_rng(3)
a = rng.uniform(-1, 1, (3, 4))
s2, cert = sign_rectangular(a)
print("unsigned norm:", np.linalg.norm(a, 2))
print("signed norm:  ", cert.achieved_norm)
print("optimum:      ", brute_force_min_norm(a)[1])
print("bound:        ", 2 * cert.dilation_linf_l2)
print("dilation spectrum check:", verify_schur_identity(a, s2, cert.dilated_sign_matrix))
print("audit problems:", audit(a, s2, cert))
print(cert.to_json(indent=2)[:400], "...")
