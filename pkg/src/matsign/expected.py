"""Conditional expected characteristic polynomials over partial symmetric signings.

For a symmetric ``A`` and a partial assignment of signs, the expectation of
``det(xI - A o S)`` over uniform independent signs at the free positions is

    sum over vertex sets W of (-1)^(|W|/2) * m_free(W) * charpoly(B[V - W])

where ``B`` keeps the fixed signed entries and zeroes the free ones, and
``m_free`` counts perfect matchings of ``W`` through free off-diagonal
positions weighted by ``a_ij ** 2``. A free sign that is not paired with its
mirror image appears to the first power and averages out, which is also why
free diagonal entries simply vanish from ``B``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError
from .linalg import as_symmetric, char_poly_batch
from .matching import matched_weight_table
from .polynomial import Polynomial

CONDITIONAL_MAX_N = 14
FREE = 0


def support_positions(a):
    """Upper-triangular positions ``(i, j)``, ``i <= j``, with ``a[i, j] != 0``, row-major."""
    a = np.asarray(a)
    n = a.shape[0]
    return tuple((i, j) for i in range(n) for j in range(i, n) if a[i, j] != 0.0)


@dataclass(frozen=True)
class PartialSigning:
    """A node of the signing tree.

    ``order`` lists the sign-carrying positions; ``states[k]`` is +1 or -1
    when ``order[k]`` is fixed and 0 when it is free.
    """

    n: int
    order: tuple
    states: tuple

    def __post_init__(self):
        if len(self.order) != len(self.states):
            raise DomainError("order and states differ in length")
        if len(set(self.order)) != len(self.order):
            raise DomainError("order repeats a position")
        for i, j in self.order:
            if not 0 <= i <= j < self.n:
                raise DomainError(f"position ({i}, {j}) is not upper-triangular in n={self.n}")
        if any(s not in (-1, 0, 1) for s in self.states):
            raise DomainError("states must be +1, -1 or 0 (free)")

    @classmethod
    def free(cls, a, order=None):
        """The root of the tree: every support position free."""
        a = as_symmetric(a)
        if order is None:
            order = support_positions(a)
        order = tuple((int(i), int(j)) for i, j in order)
        return cls(a.shape[0], order, (FREE,) * len(order))

    @property
    def n_free(self):
        return sum(1 for s in self.states if s == FREE)

    @property
    def is_complete(self):
        return FREE not in self.states

    def next_free(self):
        """Index into ``order`` of the first free position, or ``None``."""
        try:
            return self.states.index(FREE)
        except ValueError:
            return None

    def fix(self, sign, index=None):
        """Copy with ``order[index]`` (default: next free position) set to ``sign``."""
        if sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {sign}")
        if index is None:
            index = self.next_free()
            if index is None:
                raise DomainError("no free position left")
        states = list(self.states)
        states[index] = sign
        return PartialSigning(self.n, self.order, tuple(states))

    def sign_matrix(self):
        """Symmetric sign matrix; free and off-support positions read +1."""
        s = np.ones((self.n, self.n), dtype=np.int8)
        for (i, j), v in zip(self.order, self.states):
            if v != FREE:
                s[i, j] = s[j, i] = v
        return s

    def to_dict(self):
        return {
            "n": self.n,
            "order": [list(p) for p in self.order],
            "states": list(self.states),
        }


def _check_support(a, ps):
    if ps.n != a.shape[0]:
        raise DomainError(f"signing has n={ps.n}, matrix has n={a.shape[0]}")
    if set(ps.order) != set(support_positions(a)):
        raise DomainError("signing positions do not match the support of the matrix")


def fixed_background_matrix(a, ps):
    """``s_ij * a_ij`` at fixed positions, 0 at free ones."""
    a = as_symmetric(a)
    _check_support(a, ps)
    b = np.zeros_like(a)
    for (i, j), v in zip(ps.order, ps.states):
        if v != FREE:
            b[i, j] = b[j, i] = v * a[i, j]
    return b


def conditional_expected_charpoly(a, ps, max_n=CONDITIONAL_MAX_N):
    """``E[det(xI - A o S)]`` over uniform signs at the free positions of ``ps``."""
    a = as_symmetric(a)
    n = a.shape[0]
    if n > max_n:
        raise CapacityError(f"n={n} exceeds conditional-expectation guard {max_n}")
    b = fixed_background_matrix(a, ps)
    free_edges = {
        (i, j): a[i, j] ** 2
        for (i, j), v in zip(ps.order, ps.states)
        if v == FREE and i != j
    }
    table = matched_weight_table(n, free_edges)
    masks = table.nonzero()
    full = (1 << n) - 1
    sizes = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    weights = np.where(sizes % 4 == 0, 1.0, -1.0) * table.values[masks]

    coeffs = np.zeros(n + 1)
    vertices = np.arange(n)
    for size in np.unique(sizes):
        group = sizes == size
        k = n - int(size)
        rest = [vertices[(full ^ int(w)) >> vertices & 1 == 1] for w in masks[group]]
        subs = np.stack([b[np.ix_(r, r)] for r in rest]) if k else np.zeros((len(rest), 0, 0))
        if k and not np.any(subs):
            polys = np.zeros((len(rest), k + 1))
            polys[:, k] = 1.0
        else:
            polys = char_poly_batch(subs)
        coeffs[: k + 1] += weights[group] @ polys
    return Polynomial(coeffs)
