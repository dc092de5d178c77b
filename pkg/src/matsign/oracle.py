"""Exhaustive ground truth at tiny sizes.

Everything here enumerates sign patterns outright; nothing goes through
the matching-table decomposition, so it can be used to check it.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import CapacityError
from .expected import FREE, PartialSigning, fixed_background_matrix, support_positions
from .linalg import as_matrix, as_symmetric, char_poly_batch
from .polynomial import Polynomial

MAX_FREE = 20
EXACT_MAX_N = 4
EXACT_MAX_DENOMINATOR = 2**20
CHUNK = 1 << 14


def sign_patterns(k):
    """All ``2**k`` rows of +-1, binary-counter order, first column most significant, +1 before -1."""
    bits = (np.arange(1 << k)[:, None] >> np.arange(k - 1, -1, -1)) & 1
    return (1 - 2 * bits).astype(np.int8)


class SigningEnumeration:
    """Every assignment of signs to ``support`` positions of an ``n x n`` symmetric matrix."""

    def __init__(self, n, support):
        self.n = n
        self.support = tuple(support)
        if len(self.support) > MAX_FREE:
            raise CapacityError(f"{len(self.support)} free positions exceed guard {MAX_FREE}")

    def __len__(self):
        return 1 << len(self.support)

    def __iter__(self):
        for row in sign_patterns(len(self.support)):
            yield tuple(int(v) for v in row)


def _signed_stacks(base, positions, values, chunk=CHUNK):
    k = len(positions)
    pats = sign_patterns(k)
    rows = np.array([p[0] for p in positions], dtype=int)
    cols = np.array([p[1] for p in positions], dtype=int)
    vals = np.asarray(values, dtype=float)
    for start in range(0, pats.shape[0], chunk):
        block = pats[start : start + chunk].astype(float) * vals
        stack = np.repeat(base[None], block.shape[0], axis=0)
        stack[:, rows, cols] = block
        stack[:, cols, rows] = block
        yield stack


def _fsum_columns(parts):
    return np.array([math.fsum(col) for col in np.concatenate(parts).T])


def _exact_char_poly(m):
    """Faddeev-LeVerrier over ``Fraction``; ascending coefficients of ``det(xI - M)``."""
    n = len(m)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- M (mk + c[n-k+1] I)
        prev = [row[:] for row in mk]
        for i in range(n):
            prev[i][i] += c[n - k + 1]
        mk = [[sum(m[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c[n - k] = -sum(mk[i][i] for i in range(n)) / k
    return c


def _is_exact_case(a):
    if a.shape[0] > EXACT_MAX_N:
        return False
    return all(Fraction(float(v)).denominator <= EXACT_MAX_DENOMINATOR for v in a.ravel())


def _conditional_average(a, ps):
    free = [(p, float(a[p])) for p, s in zip(ps.order, ps.states) if s == FREE]
    if len(free) > MAX_FREE:
        raise CapacityError(f"{len(free)} free positions exceed guard {MAX_FREE}")
    base = fixed_background_matrix(a, ps)
    positions = [p for p, _ in free]
    values = [v for _, v in free]
    n = a.shape[0]
    if _is_exact_case(a):
        fb = [[Fraction(float(v)) for v in row] for row in base]
        total = [Fraction(0)] * (n + 1)
        for pattern in sign_patterns(len(free)):
            m = [row[:] for row in fb]
            for (i, j), v, s in zip(positions, values, pattern):
                m[i][j] = m[j][i] = Fraction(v) * int(s)
            for d, cd in enumerate(_exact_char_poly(m)):
                total[d] += cd
        count = 1 << len(free)
        return Polynomial([float(t / count) for t in total])
    parts = [char_poly_batch(stack) for stack in _signed_stacks(base, positions, values)]
    return Polynomial(_fsum_columns(parts) / (1 << len(free)))


def exact_average_charpoly(a):
    """Average of ``det(xI - A o S)`` over every symmetric signing of the support of ``A``."""
    a = as_symmetric(a)
    return _conditional_average(a, PartialSigning.free(a))


def exact_conditional_average(a, ps):
    """Average of ``det(xI - A o S)`` over the completions of the free positions of ``ps``."""
    return _conditional_average(as_symmetric(a), ps)


def brute_force_min_norm(a):
    """Sign matrix minimizing ``||A o S||_2``; ties go to the first in enumeration order.

    Only nonzero entries are enumerated; zero entries get sign +1.
    """
    a = as_matrix(a)
    positions = [tuple(p) for p in np.argwhere(a != 0.0)]
    k = len(positions)
    if k > MAX_FREE:
        raise CapacityError(f"{k} nonzero entries exceed guard {MAX_FREE}")
    pats = sign_patterns(k)
    if k == 0:
        return np.ones(a.shape, dtype=np.int8), 0.0
    rows = np.array([p[0] for p in positions])
    cols = np.array([p[1] for p in positions])
    norms = []
    for start in range(0, pats.shape[0], CHUNK):
        block = pats[start : start + CHUNK]
        stack = np.zeros((block.shape[0],) + a.shape)
        stack[:, rows, cols] = block * a[rows, cols]
        norms.append(np.linalg.norm(stack, 2, axis=(1, 2)))
    norms = np.concatenate(norms)
    best = norms.min()
    idx = int(np.flatnonzero(norms <= best + 1e-12 * max(best, 1.0))[0])
    s = np.ones(a.shape, dtype=np.int8)
    s[rows, cols] = pats[idx]
    return s, float(norms[idx])


def brute_force_min_lambda_max(a):
    """Symmetric signing of the support minimizing the top eigenvalue, and that eigenvalue."""
    a = as_symmetric(a)
    positions = support_positions(a)
    enum = SigningEnumeration(a.shape[0], positions)
    values = [float(a[p]) for p in positions]
    best, best_s = np.inf, None
    offset = 0
    for stack in _signed_stacks(np.zeros_like(a), positions, values):
        top = np.linalg.eigvalsh(stack)[:, -1] if a.size else np.zeros(stack.shape[0])
        i = int(np.argmin(top))
        if top[i] < best - 1e-12:
            best, best_s = float(top[i]), offset + i
        offset += stack.shape[0]
    s = np.ones(a.shape, dtype=np.int8)
    for (i, j), v in zip(enum.support, sign_patterns(len(enum.support))[best_s]):
        s[i, j] = s[j, i] = v
    return s, best
