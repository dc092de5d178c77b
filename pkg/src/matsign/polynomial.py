"""Real univariate polynomials with Sturm-sequence root isolation.

Coefficients are stored in ascending degree order, the same convention as
``numpy.polynomial.polynomial``.
"""

import json

import numpy as np
import numpy.polynomial.polynomial as npoly

from .errors import DomainError

TRIM_RTOL = 1e-14
SQUAREFREE_RTOL = 1e-12


class Polynomial:
    """Immutable real polynomial ``sum(coeffs[k] * x**k)``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            c = np.zeros(1)
        if not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be finite")
        c = _trim(c, TRIM_RTOL)
        c.flags.writeable = False
        self._coeffs = c

    @classmethod
    def monomial(cls, k):
        c = np.zeros(k + 1)
        c[k] = 1.0
        return cls(c)

    @classmethod
    def from_roots(cls, roots):
        return cls(npoly.polyfromroots(roots) if len(roots) else [1.0])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        nz = np.flatnonzero(self._coeffs)
        return int(nz[-1]) if nz.size else -1

    @property
    def leading(self):
        return float(self._coeffs[-1])

    def is_zero(self):
        return self.degree < 0

    def is_monic(self, tol=1e-9):
        return not self.is_zero() and abs(self.leading - 1.0) <= tol

    def monic(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no monic normalization")
        return Polynomial(self._coeffs / self.leading)

    def derivative(self):
        return Polynomial(npoly.polyder(self._coeffs))

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return Polynomial(npoly.polyadd(self._coeffs, other._coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(npoly.polymul(self._coeffs, other._coeffs))
        return Polynomial(self._coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Polynomial(self._coeffs / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __len__(self):
        return self._coeffs.size

    def __repr__(self):
        return f"Polynomial({self._coeffs.tolist()!r})"

    def to_json(self):
        return json.dumps(self._coeffs.tolist())

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))


def _trim(c, rtol):
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return np.zeros(1)
    keep = np.flatnonzero(np.abs(c) > rtol * scale)
    return c[: keep[-1] + 1].copy()


def coeffs_close(p, q, rtol):
    """True when ``max|p - q| <= rtol * max(|p|, |q|)`` over the coefficients."""
    a = p.coeffs if isinstance(p, Polynomial) else np.asarray(p, dtype=float)
    b = q.coeffs if isinstance(q, Polynomial) else np.asarray(q, dtype=float)
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    return bool(np.max(np.abs(a - b)) <= rtol * scale)


def evaluate(p, x):
    """Horner evaluation; ``x`` may be a scalar or an array."""
    c = p.coeffs
    y = np.zeros_like(np.asarray(x, dtype=float)) + c[-1]
    for a in c[-2::-1]:
        y = y * x + a
    return float(y) if np.ndim(y) == 0 else y


def cauchy_bound(p):
    """Every complex root of ``p`` has modulus below ``1 + max|c_k / c_deg|``."""
    if p.degree < 1:
        return 1.0
    c = p.coeffs
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))


def _normalize(c):
    return c / np.max(np.abs(c))


def _strip_zero_roots(c):
    k = 0
    while k < c.size - 1 and c[k] == 0.0:
        k += 1
    return k, c[k:]


def _chain(c, tol):
    """Signed Sturm chain of ``c`` in floating point.

    A remainder is taken as zero once it drops below a running bound on its
    own rounding noise: ``tol`` for the input, grown at each division by the
    quotient's 1-norm. The last element is then the numerical
    ``gcd(p, p')``.
    """
    eps = np.finfo(float).eps
    seq = [_normalize(c)]
    if c.size == 1:
        return seq
    seq.append(_normalize(npoly.polyder(c)))
    noise = [tol, tol * c.size]
    while seq[-1].size > 1:
        q, r = npoly.polydiv(seq[-2], seq[-1])
        r = np.atleast_1d(r)
        qn = float(np.sum(np.abs(q)))
        bound = noise[-2] + qn * noise[-1] + eps * qn * seq[-2].size
        size = float(np.max(np.abs(r)))
        if size <= bound:
            break
        seq.append(-_trim(r, TRIM_RTOL) / size)
        noise.append(bound / size)
    return seq


def squarefree_part(p, tol=SQUAREFREE_RTOL):
    """Return ``p / gcd(p, p')`` computed in floating point.

    Exact roots at zero are split off first, so the zero coefficients of
    even and odd polynomials never pass through the Euclidean loop.
    """
    if p.is_zero():
        raise DomainError("zero polynomial has no square-free part")
    if p.degree == 0:
        return Polynomial([1.0])
    k, r = _strip_zero_roots(p.coeffs)
    q = r
    if r.size > 2:
        g = _chain(r, tol)[-1]
        if g.size > 1:
            q = np.atleast_1d(npoly.polydiv(r, g)[0])
    if k:
        q = np.concatenate([[0.0], q])
    return Polynomial(_normalize(q))


def _reduce(seq):
    """Divide every chain element by the last one (the gcd) so the chain never vanishes at a root."""
    g = seq[-1]
    if g.size == 1:
        return seq
    return [_normalize(np.atleast_1d(npoly.polydiv(c, g)[0])) * np.sign(g[-1]) for c in seq]


def sturm_sequence(p, tol=SQUAREFREE_RTOL):
    """Sturm chain ``p, p', -rem(p, p'), ...`` with positive rescaling per step.

    For a polynomial with repeated roots the chain stops at the numerical
    gcd and is divided through by it; sign variations then count distinct
    roots.
    """
    if p.is_zero():
        raise DomainError("Sturm sequence of the zero polynomial")
    return _reduce(_chain(p.coeffs, tol))


def _variations(seq, x):
    signs = []
    for c in seq:
        v = npoly.polyval(x, c)
        if v != 0.0:
            signs.append(v > 0.0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def real_root_count(p, a, b, tol=SQUAREFREE_RTOL):
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b}]")
    if p.is_zero():
        raise DomainError("root count of the zero polynomial")
    seq = sturm_sequence(p, tol)
    return _variations(seq, a) - _variations(seq, b)


def is_real_rooted(p, tol=SQUAREFREE_RTOL):
    """True when the distinct real roots account for the degree of the square-free part.

    One Sturm chain does both jobs: it stops at the numerical gcd of ``p``
    and ``p'`` (degree ``deg p - #distinct roots``) and its sign variations
    count the distinct real roots, so clustered roots are judged with a
    single threshold.
    """
    if p.is_zero():
        return False
    _, r = _strip_zero_roots(p.coeffs)
    if r.size == 1:
        return True
    core = Polynomial(r)
    seq = _chain(core.coeffs, tol)
    distinct = core.degree - (seq[-1].size - 1)
    seq = _reduce(seq)
    bound = cauchy_bound(core)
    return _variations(seq, -bound) - _variations(seq, bound) == distinct


def largest_real_root(p, tol=1e-12):
    """Largest real root of ``p`` to absolute accuracy ``tol``.

    Bisection on the Sturm count of the square-free part over the Cauchy
    bracket.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if p.degree < 1:
        raise DomainError("polynomial of degree < 1 has no roots")
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    r = cauchy_bound(q)
    v_top = _variations(seq, r)
    lo, hi = -r, r
    if _variations(seq, lo) - v_top < 1:
        raise DomainError("no real root inside the Cauchy bound")
    if p.coeffs[0] == 0.0 and _variations(seq, 0.0) == v_top:
        # an exact root at zero with nothing above it
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _variations(seq, mid) - v_top >= 1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def convex_combination(p, q, lam):
    """``lam * p + (1 - lam) * q`` for monic ``p`` and ``q`` of equal degree."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda={lam} outside [0, 1]")
    if p.degree != q.degree:
        raise DomainError(f"degree mismatch: {p.degree} != {q.degree}")
    if not (p.is_monic() and q.is_monic()):
        raise DomainError("convex combination requires monic polynomials")
    c = lam * p.coeffs + (1.0 - lam) * q.coeffs
    c[-1] = 1.0
    return Polynomial(c)


def common_interlacing_witness(p, q, samples=32, tol=SQUAREFREE_RTOL):
    """Sampled check that every convex combination of ``p`` and ``q`` is real-rooted.

    Monic polynomials of equal degree have a common interlacer exactly when
    all convex combinations are real-rooted; this tests the grid
    ``0, 1/samples, ..., 1`` only, so a ``True`` is evidence, not proof.
    """
    return all(
        is_real_rooted(convex_combination(p, q, k / samples), tol)
        for k in range(samples + 1)
    )
