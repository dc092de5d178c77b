"""Greedy descent through the signing tree, the rectangular pipeline, and certificates.

At each free position the two children of the current node are the
conditional expected characteristic polynomials with that sign fixed to +1
and to -1. The parent is their average, and the children have a common
interlacer, so the child with the smaller largest root never has a larger
root than the parent. Walking down to a leaf therefore ends at a signing
whose top eigenvalue is at most the largest root of the matching polynomial
of ``A o A``.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CertificationError, DimensionError, DomainError
from .expected import CONDITIONAL_MAX_N, PartialSigning, conditional_expected_charpoly
from .linalg import (
    as_matrix,
    as_sign_matrix,
    as_symmetric,
    dilate,
    dilation_bound,
    lambda_max,
    linf_l2_norm,
    operator_norm,
)
from .matching import matching_polynomial
from .polynomial import largest_real_root

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-7
ROOT_TOL = 1e-12


@dataclass
class DescentStep:
    position: tuple
    parent: object
    plus: object
    minus: object
    root_plus: float
    root_minus: float
    chosen: int


@dataclass
class SigningCertificate:
    """Audit trail for a signing.

    For ``kind == "symmetric"`` the guaranteed quantity is
    ``achieved_lambda_max``; for ``"rectangular"`` it is ``achieved_norm``
    (the two coincide on a dilation). ``guaranteed`` is False for symmetric
    inputs with a nonzero diagonal, where the chain is reported but not
    asserted.
    """

    kind: str
    sign_matrix: np.ndarray
    achieved_norm: float
    achieved_lambda_max: float
    mu_max_root: float
    hl_bound: float
    linf_l2: float
    dilation_linf_l2: float
    descent_roots: list
    order: list
    chosen_signs: list
    guaranteed: bool = True
    dilated_sign_matrix: np.ndarray = field(default=None, repr=False)

    @property
    def certified_value(self):
        return self.achieved_norm if self.kind == "rectangular" else self.achieved_lambda_max

    def to_dict(self):
        d = {
            "kind": self.kind,
            "sign_matrix": np.asarray(self.sign_matrix).astype(int).tolist(),
            "achieved_norm": float(self.achieved_norm),
            "achieved_lambda_max": float(self.achieved_lambda_max),
            "mu_max_root": float(self.mu_max_root),
            "hl_bound": float(self.hl_bound),
            "linf_l2": float(self.linf_l2),
            "dilation_linf_l2": float(self.dilation_linf_l2),
            "descent_roots": [float(r) for r in self.descent_roots],
            "order": [list(p) for p in self.order],
            "chosen_signs": [int(s) for s in self.chosen_signs],
            "guaranteed": bool(self.guaranteed),
        }
        if self.dilated_sign_matrix is not None:
            d["dilated_sign_matrix"] = np.asarray(self.dilated_sign_matrix).astype(int).tolist()
        return d

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["sign_matrix"] = np.array(d["sign_matrix"], dtype=np.int8)
        if d.get("dilated_sign_matrix") is not None:
            d["dilated_sign_matrix"] = np.array(d["dilated_sign_matrix"], dtype=np.int8)
        d["order"] = [tuple(p) for p in d["order"]]
        return cls(**d)


def heilmann_lieb_bound(a):
    """``2 * sqrt(b)`` with ``b`` the largest row sum of a nonnegative symmetric matrix."""
    a = as_symmetric(a)
    if np.any(a < 0):
        raise DomainError("Heilmann-Lieb bound needs nonnegative entries")
    if a.size == 0:
        return 0.0
    return 2.0 * float(np.sqrt(np.max(a.sum(axis=1))))


def _children(a, ps, executor, max_n):
    plus, minus = ps.fix(1), ps.fix(-1)
    if executor is None:
        return (
            conditional_expected_charpoly(a, plus, max_n),
            conditional_expected_charpoly(a, minus, max_n),
        )
    fp = executor.submit(conditional_expected_charpoly, a, plus, max_n)
    fm = executor.submit(conditional_expected_charpoly, a, minus, max_n)
    return fp.result(), fm.result()


def descend(a, order=None, tol=DEFAULT_TOL, parallel=False, max_n=CONDITIONAL_MAX_N):
    """Run the greedy descent; return the leaf and the list of ``DescentStep`` records.

    Ties within ``tol`` go to +1.
    """
    a = as_symmetric(a)
    ps = PartialSigning.free(a, order)
    parent = conditional_expected_charpoly(a, ps, max_n)
    steps = []
    executor = ThreadPoolExecutor(max_workers=2) if parallel else None
    try:
        while not ps.is_complete:
            k = ps.next_free()
            plus, minus = _children(a, ps, executor, max_n)
            rp = largest_real_root(plus, ROOT_TOL)
            rm = largest_real_root(minus, ROOT_TOL)
            chosen = 1 if rp <= rm + tol else -1
            steps.append(DescentStep(ps.order[k], parent, plus, minus, rp, rm, chosen))
            ps = ps.fix(chosen, k)
            parent = plus if chosen == 1 else minus
    finally:
        if executor is not None:
            executor.shutdown()
    return ps, steps


def greedy_symmetric_signing(a, tol=DEFAULT_TOL, order=None, parallel=False, max_n=CONDITIONAL_MAX_N):
    """Symmetric signing with ``lambda_max(A o S) <= maxroot(mu_{A o A}) + tol``.

    The inequality is asserted only for zero-diagonal ``A``; otherwise the
    certificate is report-only. Off-support positions of the returned sign
    matrix are +1.
    """
    a = as_symmetric(a)
    leaf, steps = descend(a, order, tol, parallel, max_n)
    s = leaf.sign_matrix()
    signed = a * s
    mu = matching_polynomial(a * a)
    mu_root = largest_real_root(mu, ROOT_TOL)
    roots = [mu_root] + [st.root_plus if st.chosen == 1 else st.root_minus for st in steps]
    cert = SigningCertificate(
        kind="symmetric",
        sign_matrix=s,
        achieved_norm=operator_norm(signed),
        achieved_lambda_max=lambda_max(signed),
        mu_max_root=mu_root,
        hl_bound=heilmann_lieb_bound(a * a),
        linf_l2=linf_l2_norm(a),
        dilation_linf_l2=dilation_bound(a),
        descent_roots=roots,
        order=list(leaf.order),
        chosen_signs=[st.chosen for st in steps],
        guaranteed=not np.any(np.diag(a)),
    )
    problems = _chain_violations(cert, tol)
    if problems and cert.guaranteed:
        raise CertificationError("; ".join(problems))
    for p in problems:
        log.info("report-only certificate: %s", p)
    return s, cert


def sign_rectangular(a, tol=DEFAULT_TOL, parallel=False, max_n=CONDITIONAL_MAX_N):
    """Signing ``S2`` of an ``m x n`` matrix with ``||A o S2|| <= 2 * dilation_bound(A) + tol``.

    Runs the symmetric descent on the dilation and reads ``S2`` off the
    top-right block of the resulting sign matrix.
    """
    a = as_matrix(a)
    m, n = a.shape
    ad = dilate(a)
    s_full, sym = greedy_symmetric_signing(ad, tol, parallel=parallel, max_n=max_n)
    s2 = s_full[:m, m:].copy()
    cert = SigningCertificate(
        kind="rectangular",
        sign_matrix=s2,
        achieved_norm=operator_norm(a * s2),
        achieved_lambda_max=sym.achieved_lambda_max,
        mu_max_root=sym.mu_max_root,
        hl_bound=heilmann_lieb_bound(ad * ad),
        linf_l2=linf_l2_norm(a),
        dilation_linf_l2=dilation_bound(a),
        descent_roots=sym.descent_roots,
        order=sym.order,
        chosen_signs=sym.chosen_signs,
        dilated_sign_matrix=s_full,
    )
    problems = _chain_violations(cert, tol)
    if problems:
        raise CertificationError("; ".join(problems))
    return s2, cert


def verify_schur_identity(a, s2, s_prime, tol=1e-8):
    """Eigenvalues of ``dilate(A) o S'`` are ``+-`` the singular values of ``A o S2``, padded with zeros."""
    a = as_matrix(a)
    m, n = a.shape
    s2 = as_sign_matrix(s2)
    s_prime = as_sign_matrix(s_prime, symmetric=True)
    if s2.shape != (m, n) or s_prime.shape != (m + n, m + n):
        raise DimensionError("sign matrix shapes do not match A")
    if not np.array_equal(s_prime[:m, m:], s2):
        raise DomainError("off-diagonal block of S' differs from S2")
    eig = np.linalg.eigvalsh(dilate(a) * s_prime)
    sv = np.linalg.svd(a * s2, compute_uv=False)
    expected = np.sort(np.concatenate([sv, -sv, np.zeros(abs(m - n))]))
    return bool(np.max(np.abs(eig - expected)) <= tol)


def _chain_violations(cert, tol):
    out = []
    value = cert.certified_value
    if value > cert.mu_max_root + tol:
        out.append(f"achieved {value!r} exceeds matching-polynomial root {cert.mu_max_root!r}")
    if cert.mu_max_root > cert.hl_bound + tol:
        out.append(f"matching-polynomial root {cert.mu_max_root!r} exceeds bound {cert.hl_bound!r}")
    if cert.hl_bound > 2.0 * cert.dilation_linf_l2 + tol:
        out.append(f"bound {cert.hl_bound!r} exceeds 2 * dilation norm {cert.dilation_linf_l2!r}")
    roots = cert.descent_roots
    for k, (r0, r1) in enumerate(zip(roots, roots[1:])):
        if r1 > r0 + tol:
            out.append(f"descent root increased at step {k}: {r0!r} -> {r1!r}")
    return out


def audit(a, s, cert, tol=DEFAULT_TOL):
    """Recompute every certificate quantity from ``a`` and ``s``; return the violated links."""
    a = as_matrix(a)
    s = as_sign_matrix(s)
    if s.shape != a.shape:
        return [f"sign matrix shape {s.shape} != matrix shape {a.shape}"]
    out = []
    if not np.array_equal(s, np.asarray(cert.sign_matrix)):
        out.append("certificate sign matrix differs from the signing under audit")
    if cert.kind == "rectangular":
        sym = dilate(a)
        recomputed = {"achieved_norm": operator_norm(a * s)}
    else:
        sym = as_symmetric(a)
        recomputed = {
            "achieved_norm": operator_norm(a * s),
            "achieved_lambda_max": lambda_max(a * s),
        }
    recomputed["mu_max_root"] = largest_real_root(matching_polynomial(sym * sym), ROOT_TOL)
    recomputed["hl_bound"] = heilmann_lieb_bound(sym * sym)
    recomputed["linf_l2"] = linf_l2_norm(a)
    recomputed["dilation_linf_l2"] = dilation_bound(a)
    for name, value in recomputed.items():
        claimed = getattr(cert, name)
        if abs(claimed - value) > tol:
            out.append(f"{name}: certificate {claimed!r}, recomputed {value!r}")
    if cert.kind == "symmetric" and cert.guaranteed and np.any(np.diag(a)):
        out.append("guarantee claimed for a matrix with nonzero diagonal")
    if cert.guaranteed:
        out.extend(_chain_violations(cert, tol))
    return out


def certify(a, s, cert, tol=DEFAULT_TOL):
    problems = audit(a, s, cert, tol)
    for p in problems:
        log.warning("certificate check failed: %s", p)
    return not problems
