"""Command-line front end.

    matsign sign --in A.csv [--out report.json] [--symmetric] [--tol 1e-7]
    matsign matchpoly --in A.csv
    matsign oracle --in A.csv

Reports go to stdout (or ``--out``) as one JSON document; diagnostics go to
stderr. Exit codes: 0 success, 2 parse or input error, 3 capacity guard,
4 certification or oracle-check failure.
"""

import argparse
import hashlib
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from .errors import CapacityError, CertificationError, DomainError, ParseError
from .expected import CONDITIONAL_MAX_N
from .linalg import as_matrix, dilate, dilation_bound, is_symmetric
from .matching import matching_polynomial
from .matrix_io import parse_matrix, to_csv
from .oracle import (
    MAX_FREE,
    brute_force_min_lambda_max,
    brute_force_min_norm,
    exact_average_charpoly,
)
from .polynomial import coeffs_close, largest_real_root
from .search import (
    DEFAULT_TOL,
    ROOT_TOL,
    audit,
    greedy_symmetric_signing,
    heilmann_lieb_bound,
    sign_rectangular,
)

log = logging.getLogger("matsign")

EXIT_OK, EXIT_PARSE, EXIT_CAPACITY, EXIT_CERT = 0, 2, 3, 4


def _load(args):
    if args.random:
        try:
            m, n = (int(v) for v in args.random.lower().split("x"))
        except ValueError:
            raise ParseError(f"--random expects MxN, got {args.random!r}") from None
        rng = np.random.default_rng(args.seed)
        a = rng.uniform(-1.0, 1.0, size=(m, n))
        if args.symmetric and m == n:
            a = np.triu(a, 1) + np.triu(a, 1).T
        text = to_csv(a)
        source = f"random:{m}x{n}:seed={args.seed}"
    else:
        if not args.input:
            raise ParseError("one of --in or --random is required")
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(str(exc)) from None
        source = args.input
    a = parse_matrix(text)
    meta = {
        "shape": list(a.shape),
        "source": source,
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }
    return a, meta


def _root_or_none(p):
    try:
        return largest_real_root(p, ROOT_TOL)
    except DomainError:
        return None


def cmd_sign(args, a):
    max_n = args.max_n or CONDITIONAL_MAX_N
    symmetric = args.symmetric and is_symmetric(a) and not np.any(np.diag(a))
    if args.symmetric and not symmetric:
        log.warning("input is not symmetric with zero diagonal; signing its dilation instead")
    if symmetric:
        s, cert = greedy_symmetric_signing(a, args.tol, parallel=args.parallel, max_n=max_n)
    else:
        s, cert = sign_rectangular(a, args.tol, parallel=args.parallel, max_n=max_n)
    problems = audit(a, s, cert, args.tol)
    for p in problems:
        log.error("certification: %s", p)
    body = {"certificate": cert.to_dict(), "certified": not problems}
    return body, EXIT_CERT if problems else EXIT_OK


def cmd_matchpoly(args, a):
    if not is_symmetric(a):
        raise ParseError("matchpoly needs a symmetric matrix")
    mu = matching_polynomial(a)
    mu_sq = matching_polynomial(a * a)
    body = {
        "mu": mu.coeffs.tolist(),
        "mu_max_root": _root_or_none(mu),
        "mu_squared": mu_sq.coeffs.tolist(),
        "mu_squared_max_root": _root_or_none(mu_sq),
        "hl_bound_squared": heilmann_lieb_bound(a * a),
        "hl_bound": heilmann_lieb_bound(a) if not np.any(a < 0) else None,
    }
    return body, EXIT_OK


def cmd_oracle(args, a):
    tol = args.tol
    checks = {}
    sym = a if is_symmetric(a) else dilate(a)
    avg = exact_average_charpoly(sym)
    mu = matching_polynomial(sym * sym)
    checks["expected_charpoly"] = {
        "exact_average": avg.coeffs.tolist(),
        "matching_polynomial": mu.coeffs.tolist(),
        "pass": coeffs_close(avg, mu, 1e-10),
    }

    bound = 2.0 * dilation_bound(a)
    if np.count_nonzero(a) <= MAX_FREE:
        s2, cert = sign_rectangular(a, tol)
        _, best = brute_force_min_norm(a)
        checks["min_norm"] = {
            "brute_force": best,
            "greedy": cert.achieved_norm,
            "bound": bound,
            "pass": best <= cert.achieved_norm + tol and cert.achieved_norm <= bound + tol,
        }
    else:
        checks["min_norm"] = {"skipped": f"more than {MAX_FREE} nonzero entries"}

    if is_symmetric(a) and not np.any(np.diag(a)):
        _, cert = greedy_symmetric_signing(a, tol)
        _, best = brute_force_min_lambda_max(a)
        checks["symmetric_descent"] = {
            "brute_force_lambda_max": best,
            "greedy_lambda_max": cert.achieved_lambda_max,
            "mu_max_root": cert.mu_max_root,
            "pass": best <= cert.achieved_lambda_max + tol
            and cert.achieved_lambda_max <= cert.mu_max_root + tol,
        }
    ok = all(c.get("pass", True) for c in checks.values())
    return {"checks": checks, "pass": ok}, EXIT_OK if ok else EXIT_CERT


COMMANDS = {"sign": cmd_sign, "matchpoly": cmd_matchpoly, "oracle": cmd_oracle}


def build_parser():
    parser = argparse.ArgumentParser(prog="matsign", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--in", dest="input", metavar="PATH")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--symmetric", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--random", metavar="MxN", help="use a seeded uniform[-1, 1] matrix instead of --in")
        p.add_argument("--max-n", type=int, default=None, help="override the subset-size guard")
        p.add_argument("--parallel", action="store_true")
        p.add_argument("--no-timing", action="store_true", help="omit timing_ms from the report")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s: %(message)s")
    start = time.perf_counter()
    try:
        a, meta = _load(args)
        body, code = COMMANDS[args.command](args, as_matrix(a))
    except ParseError as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except CapacityError as exc:
        log.error("%s", exc)
        return EXIT_CAPACITY
    except CertificationError as exc:
        log.error("%s", exc)
        return EXIT_CERT
    report = {"version": __version__, "subcommand": args.command, "input": meta, **body}
    if not args.no_timing:
        report["timing_ms"] = round(1000.0 * (time.perf_counter() - start), 3)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
