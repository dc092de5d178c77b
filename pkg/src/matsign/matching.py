"""Dimer arrangements, dimer partition functions and matching polynomials.

Vertex subsets are bitmasks. ``matched_weight_table`` fills, for every
subset ``W``, the total weight of perfect matchings of ``W``; grouping that
table by popcount gives the dimer partition functions.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CapacityError, DomainError
from .linalg import as_symmetric
from .polynomial import Polynomial

ENUMERATION_MAX_N = 16
TABLE_MAX_N = 24


@dataclass(frozen=True)
class DimerArrangement:
    """Vertex-disjoint pairs ``(i, j)`` with ``i < j``."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted((min(i, j), max(i, j)) for i, j in self.pairs))
        ends = [v for p in pairs for v in p]
        if len(set(ends)) != len(ends):
            raise DomainError(f"pairs {pairs} share an endpoint")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def vertices(self):
        return frozenset(v for p in self.pairs for v in p)

    def weight(self, a):
        """Canonical weight: the product of ``a[i, j]`` over the pairs."""
        w = 1.0
        for i, j in self.pairs:
            w *= a[i, j]
        return w


def _normalize_edges(n, edges):
    out = set()
    for i, j in edges:
        if i == j:
            raise DomainError(f"loop ({i}, {i}) is not a dimer")
        if not (0 <= i < n and 0 <= j < n):
            raise DomainError(f"edge ({i}, {j}) outside 0..{n - 1}")
        out.add((min(i, j), max(i, j)))
    return sorted(out)


def enumerate_dimer_arrangements(n, allowed, d):
    """All size-``d`` sets of pairwise disjoint allowed edges, in lexicographic order.

    Brute force; meant as an oracle for the subset DP.
    """
    if n > ENUMERATION_MAX_N:
        raise CapacityError(f"n={n} exceeds enumeration guard {ENUMERATION_MAX_N}")
    if d < 0:
        raise DomainError("d must be nonnegative")
    edges = _normalize_edges(n, allowed)
    out = []
    for combo in combinations(edges, d):
        ends = [v for e in combo for v in e]
        if len(set(ends)) == 2 * d:
            out.append(DimerArrangement(combo))
    return out


class MatchedWeightTable:
    """``m(W)`` = total weight of perfect matchings of vertex set ``W``."""

    def __init__(self, n, values):
        self.n = n
        self.values = values

    @staticmethod
    def mask(vertices):
        m = 0
        for v in vertices:
            m |= 1 << int(v)
        return m

    def __getitem__(self, key):
        if not isinstance(key, (int, np.integer)):
            key = self.mask(key)
        return float(self.values[key])

    def nonzero(self):
        """Masks with nonzero weight, ascending."""
        return np.flatnonzero(self.values)


def matched_weight_table(n, weighted_edges):
    """Subset DP: ``m(W) = sum_j w(low, j) * m(W - {low, j})``, ``low = min(W)``.

    ``weighted_edges`` maps ``(i, j)`` to a weight, or is an iterable of
    ``(i, j, w)`` triples. Masks are filled in decreasing order of their
    lowest vertex, one vectorized sweep per (lowest vertex, partner) pair.
    """
    if n > TABLE_MAX_N:
        raise CapacityError(f"n={n} exceeds subset-table guard {TABLE_MAX_N}")
    items = weighted_edges.items() if isinstance(weighted_edges, dict) else (
        ((i, j), w) for i, j, w in weighted_edges
    )
    adj = {}
    for (i, j), w in items:
        (i, j), = _normalize_edges(n, [(i, j)])
        if (i, j) in adj:
            raise DomainError(f"duplicate edge ({i}, {j})")
        if w != 0.0:
            adj[(i, j)] = float(w)

    m = np.zeros(1 << n)
    m[0] = 1.0
    for low in range(n - 1, -1, -1):
        partners = [(j, w) for (i, j), w in adj.items() if i == low]
        if not partners:
            continue
        rest = np.arange(1 << (n - low - 1), dtype=np.int64)
        masks = (rest << (low + 1)) | (1 << low)
        for j, w in partners:
            sel = masks[(masks >> j) & 1 == 1]
            m[sel] += w * m[sel ^ ((1 << low) | (1 << j))]
    return MatchedWeightTable(n, m)


def _edges_of(a):
    n = a.shape[0]
    iu, ju = np.triu_indices(n, 1)
    keep = a[iu, ju] != 0.0
    return {(int(i), int(j)): float(a[i, j]) for i, j in zip(iu[keep], ju[keep])}


def _partition_functions(a):
    a = as_symmetric(a)
    n = a.shape[0]
    table = matched_weight_table(n, _edges_of(a))
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
    z = np.bincount(sizes, weights=table.values, minlength=n + 1)
    return n, z[0::2]


def dimer_partition(a, d):
    """``Z_d(A)``: summed canonical weights of all size-``d`` dimer arrangements."""
    if d < 0:
        raise DomainError("d must be nonnegative")
    n, z = _partition_functions(a)
    return float(z[d]) if d < z.size else 0.0


def matching_polynomial(a):
    """``sum_d (-1)^d Z_d(A) x^(n - 2d)``; the diagonal of ``A`` is ignored."""
    n, z = _partition_functions(a)
    c = np.zeros(n + 1)
    for d, zd in enumerate(z):
        c[n - 2 * d] = (-1) ** d * zd
    return Polynomial(c)
