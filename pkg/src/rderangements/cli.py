"""Command-line front end.

Machine-readable output goes to stdout, human summaries to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 precision exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, cache, core, diophantine, modular, padic, verify
from .errors import (
    InternalConsistencyError,
    NoCertifyingPrime,
    PeriodicityViolation,
    PrecisionExhausted,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

log = logging.getLogger("rderangements")


class UsageError(ValueError):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _formula_value(r: int, n: int, formula: str) -> int:
    if formula == "recurrence":
        return core.r_derangement(r, n)
    if formula == "closed":
        return core.r_derangement_closed(r, n)
    if formula == "lift":
        if r < 1 or n < 1:
            raise UsageError("--formula lift needs r >= 1 and n >= 1")
        return core.r_derangement_lift(r - 1, n)
    if formula.startswith("convolution:"):
        try:
            s = int(formula.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad convolution split in {formula!r}") from None
        return core.r_derangement_convolution(r, s, n)
    raise UsageError(f"unknown formula {formula!r}")


def cmd_compute(args) -> int:
    value = _formula_value(args.r, args.n, args.formula)
    if args.reduced:
        if args.r < 1 or args.n < args.r:
            raise UsageError("--reduced needs r >= 1 and n >= r")
        q, rem = divmod(value, core.falling_factorial(args.n, args.r))
        if rem:
            raise InternalConsistencyError("(n)_r does not divide D_r(n)")
        value = q
    print(value)
    return EXIT_OK


def table_rows(r: int, n_max: int) -> list[tuple[int, int, int]]:
    return [(r, n, core.r_derangement(r, n)) for n in range(n_max + 1)]


def format_table(rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "n", "value"])
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps([{"r": r, "n": n, "value": str(v)} for r, n, v in rows], indent=2) + "\n"


def parse_table(text: str, fmt: str) -> list[tuple[int, int, int]]:
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        return [(int(row["r"]), int(row["n"]), int(row["value"])) for row in reader]
    return [(d["r"], d["n"], int(d["value"])) for d in json.loads(text)]


def cmd_table(args) -> int:
    if args.r < 0 or args.n_max < 0:
        raise UsageError("r and n_max must be nonnegative")
    sys.stdout.write(format_table(table_rows(args.r, args.n_max), args.format))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run(args.suite)
    failed = [c for c in checks if not c.passed]
    _emit([{"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail} for c in checks])
    for c in failed:
        print(f"FAIL [{c.suite}] {c.name}: {c.detail}", file=sys.stderr)
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_period(args) -> int:
    cert = modular.certify_period(args.kind, args.r, args.d, args.horizon)
    _emit(cert.to_json())
    print(
        f"{args.kind}_{args.r} mod {args.d}: period {cert.claimed_period} verified to n={cert.verified_up_to}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_valuation(args) -> int:
    nodes = padic.valuation_tree(args.p, args.r, args.depth, args.scan_bound)
    sys.stdout.write(padic.tree_to_dot(nodes) if args.dot else padic.tree_to_json(nodes) + "\n")
    print(f"{len(nodes)} verified classes", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.factorial:
        r, q = args.factorial
        try:
            sol = diophantine.solve_factorial(int(r), Fraction(q))
        except NoCertifyingPrime as exc:
            _emit({"equation": f"D_{r}(n) = {q} * m!", "status": "inconclusive", "reason": str(exc)})
            return EXIT_FAIL
    else:
        sol = diophantine.solve_prime_power_r2(args.prime_power_r2)
    _emit({"status": "complete", **sol.to_json()})
    print(f"{sol.equation}: {len(sol.solutions)} solution(s)", file=sys.stderr)
    return EXIT_OK


def cmd_asympt(args) -> int:
    per = asymptotics.saddle_estimate(args.r, args.n, args.digits)
    norm = asymptotics.saddle_estimate(args.r, args.n, args.digits, normalized=True)

    def block(est):
        return {"estimate": str(est.value), "exact": str(est.exact_decimal), "error": str(est.error)}

    _emit(
        {
            "r": args.r,
            "n": args.n,
            "digits": args.digits,
            "D_r(n)/(n+r)!": block(norm),
            "D_r(n)/n!": block(per),
            "limit 1/(r! e)": str(asymptotics.to_decimal(asymptotics.limit_value(args.r, args.digits), args.digits)),
            "bound_holds": asymptotics.deviation_bound_check(args.r, args.n) if args.r >= 1 else None,
        }
    )
    print(f"estimate {norm.value} vs exact {norm.exact_decimal}", file=sys.stderr)
    return EXIT_OK


def cmd_density(args) -> int:
    report = modular.density_report(args.r, args.x)
    _emit(report.to_json())
    print(f"{report.in_A}/{report.primes} primes <= {args.x} lie in A_{args.r}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rderangements", description=__doc__.splitlines()[0])
    ap.add_argument("--cache", type=Path, help=f"cache file (default ${cache.ENV_VAR} or ~/.cache)")
    ap.add_argument("--no-cache", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print D_r(n) or C_r(n)")
    p.add_argument("r", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--formula", default="recurrence", help="recurrence | closed | convolution:S | lift")
    p.add_argument("--reduced", action="store_true", help="print C_r(n) = D_r(n)/(n)_r")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="D_r(0..n_max)")
    p.add_argument("r", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", action="append", choices=[*verify.SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("period", help="certify residue periodicity")
    p.add_argument("kind", choices=modular.KINDS)
    p.add_argument("r", type=int)
    p.add_argument("d", type=int)
    p.add_argument("horizon", type=int, nargs="?", help="horizon in multiples of d")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("valuation", help="p-adic lifting tree of C_r")
    p.add_argument("p", type=int)
    p.add_argument("r", type=int)
    p.add_argument("depth", type=int)
    p.add_argument("scan_bound", type=int, nargs="?", default=padic.DEFAULT_SCAN_BOUND)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("solve", help="diophantine searches")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--factorial", nargs=2, metavar=("R", "Q"), help="D_r(n) = q * m!")
    g.add_argument("--prime-power-r2", type=int, metavar="CAP", help="D_2(n) = p^k")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("asympt", help="saddle-point estimate vs exact")
    p.add_argument("r", type=int)
    p.add_argument("n", type=int)
    p.add_argument("digits", type=int, nargs="?", default=asymptotics.DEFAULT_DIGITS)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("density", help="share of primes <= x in A_r")
    p.add_argument("r", type=int)
    p.add_argument("x", type=int)
    p.set_defaults(func=cmd_density)
    return ap


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    use_cache = not args.no_cache
    if use_cache:
        cache.load(args.cache)
    try:
        code = args.func(args)
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InternalConsistencyError, PeriodicityViolation) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if use_cache:
        try:
            cache.save(args.cache)
        except OSError as exc:
            log.warning("could not write cache: %s", exc)
    return code


if __name__ == "__main__":
    sys.exit(main())
