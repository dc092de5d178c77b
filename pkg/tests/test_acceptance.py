"""End-to-end acceptance checks.

Each test appends one PASS/FAIL line to the terminal summary before
asserting, so a failing criterion is still reported next to the others.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_symmetric
from matsign.expected import PartialSigning, conditional_expected_charpoly, support_positions
from matsign.linalg import dilate, dilation_bound, linf_l2_norm
from matsign.matching import matching_polynomial
from matsign.oracle import brute_force_min_norm, exact_average_charpoly, exact_conditional_average
from matsign.polynomial import (
    coeffs_close,
    common_interlacing_witness,
    is_real_rooted,
    largest_real_root,
)
from matsign.search import descend, sign_rectangular, verify_schur_identity

SLACK = 1e-7


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    assert ok, detail


def random_shape(rng, max_side=5, max_sum=10, max_product=None):
    while True:
        m, n = (int(v) for v in rng.integers(1, max_side + 1, size=2))
        if m + n <= max_sum and (max_product is None or m * n <= max_product):
            return m, n


def signing_prefixes(rng, a):
    """Root to leaf along a random order with random signs."""
    order = list(support_positions(a))
    rng.shuffle(order)
    ps = PartialSigning.free(a, order)
    yield ps
    while not ps.is_complete:
        ps = ps.fix(int(rng.choice([-1, 1])))
        yield ps


@pytest.fixture(scope="module")
def rectangular_runs():
    rng = np.random.default_rng(501)
    start = time.perf_counter()
    runs = []
    for _ in range(100):
        a = rng.uniform(-1.0, 1.0, size=random_shape(rng))
        s2, cert = sign_rectangular(a)
        runs.append((a, s2, cert))
    return runs, time.perf_counter() - start


def test_average_equals_matching_polynomial():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    bad = 0
    for k in range(100):
        a = random_symmetric(rng, 2 + k % 4)
        avg, mu = exact_average_charpoly(a), matching_polynomial(a * a)
        scale = max(np.max(np.abs(avg.coeffs)), np.max(np.abs(mu.coeffs)))
        worst = max(worst, float(np.max(np.abs(avg.coeffs - mu.coeffs))) / scale)
        bad += not coeffs_close(avg, mu, 1e-10)
    elapsed = time.perf_counter() - start
    record(1, "average char poly = matching poly of A o A", bad == 0 and elapsed < 30,
           f"100 matrices, n=2..5, worst rel {worst:.1e}, {bad} over 1e-10, {elapsed:.1f}s (< 30s)")


def test_conditional_against_enumeration():
    rng = np.random.default_rng(102)
    start = time.perf_counter()
    checked = bad = 0
    for _ in range(50):
        a = random_symmetric(rng, int(rng.integers(1, 6)))
        for ps in signing_prefixes(rng, a):
            checked += 1
            bad += not coeffs_close(conditional_expected_charpoly(a, ps), exact_conditional_average(a, ps), 1e-9)
    elapsed = time.perf_counter() - start
    record(2, "conditional expectation vs enumeration", bad == 0 and elapsed < 60,
           f"50 matrices, {checked} prefixes, {bad} over 1e-9, {elapsed:.1f}s (< 60s)")


def test_martingale():
    rng = np.random.default_rng(103)
    checked = bad = 0
    for _ in range(50):
        a = random_symmetric(rng, int(rng.integers(1, 6)))
        for ps in signing_prefixes(rng, a):
            if ps.is_complete:
                continue
            parent = conditional_expected_charpoly(a, ps)
            plus = conditional_expected_charpoly(a, ps.fix(1))
            minus = conditional_expected_charpoly(a, ps.fix(-1))
            checked += 1
            bad += not coeffs_close(parent, 0.5 * (plus + minus), 1e-10)
    record(3, "parent is the average of its children", bad == 0,
           f"{checked} internal nodes, n<=5, {bad} over 1e-10")


def test_heilmann_lieb():
    rng = np.random.default_rng(104)
    bad = []
    for k in range(100):
        n = int(rng.integers(1, 13))
        if k % 2:
            a = random_symmetric(rng, n, 0.0, 1.0, zero_diagonal=True)
        else:
            upper = np.triu(rng.random((n, n)) < 0.4, 1).astype(float)
            a = upper + upper.T
        mu = matching_polynomial(a)
        mu_sq = matching_polynomial(a * a)
        hl = 2.0 * math.sqrt(float(np.max(a.sum(axis=1))))
        if not (is_real_rooted(mu) and is_real_rooted(mu_sq)):
            bad.append(f"#{k} not real-rooted")
            continue
        if not largest_real_root(mu) < hl + 1e-9:
            bad.append(f"#{k} root above 2 sqrt(max row sum)")
        if not largest_real_root(mu_sq) < 2.0 * linf_l2_norm(a) + 1e-9:
            bad.append(f"#{k} root of mu(A o A) above 2 linf_l2")
    record(4, "matching polys real-rooted and below 2 sqrt(b)", not bad,
           f"100 nonnegative matrices, n<=12, failures: {bad or 'none'}")


def test_rectangular_end_to_end(rectangular_runs):
    runs, elapsed = rectangular_runs
    bad = 0
    for a, s2, cert in runs:
        norm = np.linalg.norm(a * s2, 2)
        bad += not (norm <= cert.mu_max_root + SLACK and cert.mu_max_root <= 2 * dilation_bound(a) + SLACK)
    record(5, "||A o S2|| <= maxroot <= 2 dilation bound", bad == 0 and elapsed < 300,
           f"100 matrices, m,n<=5, {bad} violations, {elapsed:.1f}s (< 300s)")


def test_greedy_against_optimum():
    rng = np.random.default_rng(106)
    bad = 0
    gap = 0.0
    for _ in range(50):
        a = rng.uniform(-1.0, 1.0, size=random_shape(rng, max_product=12))
        _, best = brute_force_min_norm(a)
        _, cert = sign_rectangular(a)
        bound = min(cert.mu_max_root, 2 * dilation_bound(a)) + SLACK
        bad += not (best <= cert.achieved_norm + 1e-12 and cert.achieved_norm <= bound and best <= bound)
        gap = max(gap, cert.achieved_norm - best)
    record(6, "optimum <= greedy <= certified bound", bad == 0,
           f"50 matrices, m*n<=12, {bad} violations, largest greedy gap {gap:.3f}")


def test_interlacing_along_descents():
    rng = np.random.default_rng(107)
    nodes = pairs = bad = 0
    for _ in range(20):
        m, n = random_shape(rng, max_side=4, max_sum=8)
        ad = dilate(rng.uniform(-1.0, 1.0, size=(m, n)))
        _, steps = descend(ad)
        for st in steps:
            for p in (st.parent, st.plus, st.minus):
                nodes += 1
                bad += not is_real_rooted(p)
            pairs += 1
            bad += not common_interlacing_witness(st.plus, st.minus, samples=32)
    record(7, "children share an interlacer, nodes real-rooted", bad == 0,
           f"20 descents, dilated n<=8, {nodes} nodes, {pairs} sibling pairs, {bad} failures")


def test_schur_identity(rectangular_runs):
    runs, _ = rectangular_runs
    bad = sum(not verify_schur_identity(a, s2, cert.dilated_sign_matrix, 1e-8) for a, s2, cert in runs)
    record(8, "dilation spectrum = +-singular values", bad == 0,
           f"{len(runs)} signings from criterion 5, {bad} over 1e-8")


def test_worked_fixture():
    s2, cert = sign_rectangular(np.ones((2, 2)))
    got = (cert.achieved_norm, cert.mu_max_root, 2 * cert.dilation_linf_l2)
    want = (1.41421356, 1.84775907, 2.82842712)
    mu = matching_polynomial(dilate(np.ones((2, 2))))
    ok = all(abs(g - w) <= 1e-7 for g, w in zip(got, want)) and coeffs_close(mu, [2, 0, -4, 0, 1], 0)
    record(9, "all-ones 2x2 certificate chain", ok,
           " <= ".join(f"{v:.8f}" for v in got) + ", mu = x^4 - 4x^2 + 2")


def test_cli_determinism(tmp_path):
    path = tmp_path / "a.csv"
    rng = np.random.default_rng(110)
    path.write_text("\n".join(",".join(repr(float(v)) for v in row) for row in rng.uniform(-1, 1, (3, 4))))
    outputs = []
    for k in range(3):
        out = tmp_path / f"r{k}.json"
        cmd = [sys.executable, "-m", "matsign", "sign", "--in", str(path), "--out", str(out), "--no-timing"]
        subprocess.run(cmd, check=True)
        outputs.append(out.read_bytes())
    ok = len(set(outputs)) == 1
    record(10, "repeated sign runs are byte-identical", ok,
           f"3 separate processes, {len(outputs[0])} bytes each, identical={ok}")
