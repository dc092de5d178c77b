"""Dense matrix helpers: Schur products, dilations, norms and characteristic polynomials.

Matrices are plain 2-D ``numpy`` float arrays. Sign matrices are integer
arrays with entries in {+1, -1}.
"""

import numpy as np

from .errors import DimensionError, DomainError
from .polynomial import Polynomial


def as_matrix(a):
    """Validate and return ``a`` as a finite 2-D float array."""
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    return m


def as_symmetric(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"symmetric matrix must be square, got {m.shape}")
    if not np.array_equal(m, m.T):
        raise DomainError("matrix is not symmetric")
    return m


def is_symmetric(a):
    m = np.asarray(a)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.array_equal(m, m.T)


def as_sign_matrix(s, symmetric=False):
    m = np.asarray(s)
    if m.ndim != 2:
        raise DimensionError("sign matrix must be 2-D")
    if not np.all((m == 1) | (m == -1)):
        raise DomainError("sign matrix entries must be exactly +1 or -1")
    if symmetric and not is_symmetric(m):
        raise DomainError("sign matrix is not symmetric")
    return m.astype(np.int8)


def hadamard(a, b):
    """Entrywise (Schur) product."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def dilate(a):
    """Symmetric ``(m+n) x (m+n)`` matrix ``[[0, A], [A^T, 0]]``."""
    a = as_matrix(a)
    m, n = a.shape
    d = np.zeros((m + n, m + n))
    d[:m, m:] = a
    d[m:, :m] = a.T
    return d


def linf_l2_norm(a):
    """Largest Euclidean column norm."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.sqrt(np.sum(a * a, axis=0))))


def dilation_bound(a):
    """``linf_l2_norm(dilate(a))``: the largest row or column Euclidean norm of ``a``."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return max(linf_l2_norm(a), linf_l2_norm(a.T))


def operator_norm(a, tol=1e-12):
    """Largest singular value.

    LAPACK's SVD is accurate to machine precision relative to the norm, far
    inside any admissible ``tol``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def principal_submatrix(m, keep):
    m = np.asarray(m, dtype=float)
    idx = sorted(set(int(k) for k in keep))
    if idx and (idx[0] < 0 or idx[-1] >= m.shape[0]):
        raise IndexError(f"indices {idx} out of range for n={m.shape[0]}")
    return m[np.ix_(idx, idx)]


def char_poly_batch(stack):
    """Characteristic polynomials of a stack of symmetric ``k x k`` matrices.

    Returns an ``(N, k + 1)`` array of ascending coefficients of
    ``det(xI - M)``, expanded from ``eigvalsh`` eigenvalues.
    """
    stack = np.asarray(stack, dtype=float)
    count, k = stack.shape[0], stack.shape[-1]
    # descending-order coefficients, leading 1
    c = np.zeros((count, k + 1))
    c[:, 0] = 1.0
    if k:
        roots = np.linalg.eigvalsh(stack)
        for j in range(k):
            r = roots[:, j : j + 1]
            c[:, 1 : j + 2] = c[:, 1 : j + 2] - r * c[:, : j + 1]
    return c[:, ::-1]


def char_poly(m):
    """Monic ``det(xI - M)`` of a real symmetric matrix."""
    m = np.asarray(m, dtype=float)
    if m.size and not np.any(m):
        return Polynomial.monomial(m.shape[0])
    if m.size == 0:
        return Polynomial([1.0])
    return Polynomial(char_poly_batch(as_symmetric(m)[None])[0])


def lambda_max(m):
    """Largest eigenvalue of a symmetric matrix."""
    m = as_symmetric(m)
    return float(np.linalg.eigvalsh(m)[-1]) if m.size else 0.0
