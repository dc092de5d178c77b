import json
import math

import numpy as np
import pytest

from matsign.errors import CertificationError, DimensionError, DomainError
from matsign.linalg import dilate, lambda_max
from matsign.oracle import brute_force_min_lambda_max
from matsign.search import (
    SigningCertificate,
    audit,
    certify,
    descend,
    greedy_symmetric_signing,
    heilmann_lieb_bound,
    sign_rectangular,
    verify_schur_identity,
)

from conftest import random_symmetric


def test_heilmann_lieb_examples(triangle):
    assert heilmann_lieb_bound(triangle) == pytest.approx(2 * math.sqrt(2))
    assert heilmann_lieb_bound(np.zeros((3, 3))) == 0.0
    with pytest.raises(DomainError):
        heilmann_lieb_bound(-triangle)


def test_triangle_certificate(triangle):
    s, cert = greedy_symmetric_signing(triangle)
    assert cert.kind == "symmetric" and cert.guaranteed
    assert cert.mu_max_root == pytest.approx(math.sqrt(3), abs=1e-10)
    assert cert.achieved_lambda_max == pytest.approx(1.0, abs=1e-10)
    _, best = brute_force_min_lambda_max(triangle)
    assert cert.achieved_lambda_max == pytest.approx(best, abs=1e-10)
    assert s[0, 1] * s[0, 2] * s[1, 2] == -1
    assert certify(triangle, s, cert)


def test_descent_roots_never_increase(rng):
    a = random_symmetric(rng, 5, zero_diagonal=True)
    leaf, steps = descend(a)
    assert leaf.is_complete and len(steps) == len(leaf.order)
    for st in steps:
        chosen = st.root_plus if st.chosen == 1 else st.root_minus
        assert chosen == min(st.root_plus, st.root_minus) or abs(st.root_plus - st.root_minus) <= 1e-7


def test_ties_go_to_plus():
    # every child pair of the two-vertex edge has the same root
    _, steps = descend(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert [st.chosen for st in steps] == [1]


def test_all_ones_fixture():
    s2, cert = sign_rectangular(np.ones((2, 2)))
    assert cert.achieved_norm == pytest.approx(math.sqrt(2), abs=1e-7)
    assert cert.mu_max_root == pytest.approx(math.sqrt(2 + math.sqrt(2)), abs=1e-7)
    assert 2 * cert.dilation_linf_l2 == pytest.approx(2 * math.sqrt(2), abs=1e-7)
    assert np.prod(s2) == -1


def test_one_by_one_and_zero():
    s2, cert = sign_rectangular(np.array([[1.0]]))
    assert cert.achieved_norm == pytest.approx(1.0)
    assert cert.mu_max_root == pytest.approx(1.0)
    s2, cert = sign_rectangular(np.zeros((2, 3)))
    assert np.all(s2 == 1) and cert.achieved_norm == 0.0 and cert.mu_max_root == 0.0


def test_nonzero_diagonal_is_report_only():
    a = np.diag([3.0, -2.0])
    s, cert = greedy_symmetric_signing(a)
    assert not cert.guaranteed
    assert cert.achieved_lambda_max == pytest.approx(-2.0)
    assert cert.mu_max_root == pytest.approx(0.0, abs=1e-12)
    assert np.array_equal(np.diag(s), [-1, 1])


def test_schur_identity_examples():
    a = np.array([[1.0, 2.0]])
    s_prime = np.ones((3, 3), dtype=int)
    assert verify_schur_identity(a, [[1, 1]], s_prime)
    eig = np.linalg.eigvalsh(dilate(a))
    assert np.allclose(eig, [-math.sqrt(5), 0.0, math.sqrt(5)])
    s_prime[0, 1] = s_prime[1, 0] = -1
    assert verify_schur_identity(a, [[-1, 1]], s_prime)
    with pytest.raises(DomainError):
        verify_schur_identity(a, [[1, 1]], s_prime)
    with pytest.raises(DimensionError):
        verify_schur_identity(a, [[1, 1, 1]], s_prime)


def test_schur_identity_on_rectangular_output(rng):
    for m, n in [(1, 4), (3, 2), (2, 2)]:
        a = rng.uniform(-1, 1, (m, n))
        s2, cert = sign_rectangular(a)
        assert verify_schur_identity(a, s2, cert.dilated_sign_matrix)


def test_certify_rejects_corruption(rng):
    a = rng.uniform(-1, 1, (2, 3))
    s2, cert = sign_rectangular(a)
    assert certify(a, s2, cert)
    bad = SigningCertificate.from_dict({**cert.to_dict(), "achieved_norm": cert.achieved_norm + 1.0})
    assert not certify(a, s2, bad)
    assert any("achieved_norm" in p for p in audit(a, s2, bad))
    flipped = s2.copy()
    flipped[0, 0] *= -1
    assert audit(a, flipped, cert)


def test_scaling_equivariance(rng):
    a = rng.uniform(-1, 1, (3, 2))
    s2, cert = sign_rectangular(a)
    t2, scaled = sign_rectangular(3.0 * a)
    assert np.array_equal(s2, t2)
    assert scaled.achieved_norm == pytest.approx(3.0 * cert.achieved_norm)
    assert scaled.mu_max_root == pytest.approx(3.0 * cert.mu_max_root)


def test_json_round_trip_and_determinism(rng):
    a = rng.uniform(-1, 1, (2, 3))
    _, cert = sign_rectangular(a)
    again = SigningCertificate.from_dict(json.loads(cert.to_json()))
    assert again.to_json() == cert.to_json()
    assert sign_rectangular(a)[1].to_json() == cert.to_json()


def test_parallel_matches_serial(rng):
    a = rng.uniform(-1, 1, (3, 3))
    assert sign_rectangular(a, parallel=True)[1].to_json() == sign_rectangular(a)[1].to_json()


def test_symmetric_guarantee_holds(rng):
    for n in range(2, 7):
        a = random_symmetric(rng, n, zero_diagonal=True)
        s, cert = greedy_symmetric_signing(a)
        assert lambda_max(a * s) <= cert.mu_max_root + 1e-7


def test_certification_error_is_raised(monkeypatch):
    import matsign.search as search

    monkeypatch.setattr(search, "_chain_violations", lambda cert, tol: ["forced"])
    with pytest.raises(CertificationError):
        sign_rectangular(np.ones((1, 2)))
