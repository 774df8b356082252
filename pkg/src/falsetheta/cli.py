"""Command-line driver for expansions, identity checks and congruence suites.

Exit status: 0 when every check passes, 1 when at least one check reports a
violation, 2 for usage or parse errors, 3 for computation errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import arith, congruence, identities
from .expr import ParseError, SeriesCache, evaluate, parse, serialize
from .qfactory import named_series
from .report import VerificationReport
from .series import NonUnitError, RingMismatchError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

DEFAULT_TERMS = 2000


class UsageError(Exception):
    pass


def _jobs_default() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--terms", type=int, default=d(None),
                   help=f"truncation order N (default {DEFAULT_TERMS})")
    p.add_argument("--mod", type=int, default=d(None),
                   help="coefficient ring modulus, 0 for exact (default per command)")
    p.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    p.add_argument("--jobs", type=int, default=d(_jobs_default()),
                   help="parallel workers for independent checks")
    p.add_argument("--cache-dir", default=d(None),
                   help="directory for cached expansions (default: no cache)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m falsetheta", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        p = sub.add_parser(name, help=help)
        _add_globals(p, suppress=True)
        return p

    p = cmd("expand", "print the coefficients of an expression")
    p.add_argument("--expr", required=True)

    p = cmd("verify-id", "verify catalog identities or an ad hoc pair")
    p.add_argument("name", nargs="?", help="catalog entry, 'all' (default) or 'chain'")
    p.add_argument("--lhs")
    p.add_argument("--rhs")

    p = cmd("verify-cong", "check one congruence claim or the builtin catalog")
    p.add_argument("--series", help="expression, e.g. '1/psi(5)'")
    p.add_argument("--A", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--exclude-p", type=int)
    p.add_argument("--builtin", action="store_true",
                   help="check every builtin claim at its default n_max")

    cmd("theorem1", "the conjectured c5 congruences mod 4 and 8")

    p = cmd("theorem2", "the prime-power family c5(4p^(2k+1)n + (8p^(2k+2)+1)/3)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int)

    p = cmd("wang", "compare sigma(3n+2)/3 with the coefficients of f3^6/f1^2")
    p.add_argument("--nmax", type=int, required=True)

    p = cmd("audit-valuation", "p-adic valuation and form-representation audit")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)

    p = cmd("density", "count coefficients divisible by M")
    p.add_argument("--series", required=True)
    p.add_argument("--M", "--modulus", dest="density_mod", type=int)
    p.add_argument("--nmax", type=int, required=True)

    cmd("catalog", "list catalog identities and builtin claims")
    return parser


# -- output -----------------------------------------------------------------

def _emit(args, reports: list[VerificationReport], params: dict, out) -> int:
    fmt = args.format
    if fmt == "json":
        doc = {"command": args.command, "params": params,
               "results": [r.to_dict() for r in reports]}
        out.write(json.dumps(doc, indent=2, default=str) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "status", "n_checked", "violations", "elapsed_ms"])
        for r in reports:
            viol = ";".join(f"{n}:{v}" for n, v in r.violations)
            w.writerow([r.name, r.status, r.n_checked, viol, round(r.elapsed * 1000, 3)])
    else:
        for r in reports:
            out.write(r.summary() + "\n")
        passed = sum(r.passed for r in reports)
        out.write(f"{passed}/{len(reports)} passed\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cache(args):
    return SeriesCache(args.cache_dir) if args.cache_dir else None


def _terms(args, default=DEFAULT_TERMS) -> int:
    n = args.terms if args.terms is not None else default
    if n < 0:
        raise UsageError("--terms must be nonnegative")
    return n


def _mod(args, default: int) -> int:
    m = args.mod if args.mod is not None else default
    if m < 0 or m == 1:
        raise UsageError("--mod must be 0 or >= 2")
    return m


# -- commands ---------------------------------------------------------------

def cmd_expand(args, out) -> int:
    e = parse(args.expr)
    N, M = _terms(args), _mod(args, 0)
    s = evaluate(e, N, M, _cache(args))
    coeffs = s.tolist()
    if args.format == "json":
        doc = {"command": "expand",
               "params": {"expr": serialize(e), "terms": N, "mod": M},
               "results": [{"name": serialize(e), "status": "ok", "coefficients": coeffs}]}
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "coefficient"])
        w.writerows(enumerate(coeffs))
    else:
        out.write(" ".join(map(str, coeffs)) + "\n")
    return EXIT_OK


def _verify_entry(job):
    entry, N, cache_dir = job
    cache = SeriesCache(cache_dir) if cache_dir else None
    return identities.verify_identity(entry, N, cache)


def _map(fn, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_verify_id(args, out) -> int:
    if args.lhs or args.rhs:
        if not (args.lhs and args.rhs) or args.name:
            raise UsageError("give NAME, or both --lhs and --rhs")
        parse(args.lhs)
        parse(args.rhs)
        M = _mod(args, 0)
        entry = identities.IdentityEntry("adhoc", args.lhs, args.rhs, M)
        entries = [entry]
    elif args.name in (None, "all"):
        entries = identities.catalog()
    elif args.name == "chain":
        entries = identities.chain_checks()
    else:
        try:
            entries = [identities.lookup(args.name)]
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    jobs = [(e, args.terms, args.cache_dir) for e in entries]
    reports = _map(_verify_entry, jobs, args.jobs)
    params = {"name": args.name, "lhs": args.lhs, "rhs": args.rhs, "terms": args.terms}
    return _emit(args, reports, params, out)


def cmd_verify_cong(args, out) -> int:
    if args.builtin:
        pairs = congruence.builtin_claims()
        order = max(congruence.required_order(c, n) for c, n in pairs)
        reports = congruence.check_claims(pairs, order)
        return _emit(args, reports, {"builtin": True, "order": order}, out)
    missing = [f for f in ("series", "A", "B", "M", "nmax") if getattr(args, f) is None]
    if missing:
        raise UsageError("missing --" + ", --".join(missing))
    e = parse(args.series)
    try:
        claim = congruence.CongruenceClaim(serialize(e), args.A, args.B, args.M,
                                           exclude_p=args.exclude_p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    need = congruence.required_order(claim, args.nmax)
    N = need if args.terms is None else _terms(args)
    s = evaluate(e, N, _mod(args, args.M), _cache(args))
    report = congruence.check_claim(s, claim, args.nmax)
    params = {"series": serialize(e), "A": args.A, "B": args.B, "M": args.M,
              "nmax": args.nmax, "exclude_p": args.exclude_p, "terms": N}
    return _emit(args, [report], params, out)


def cmd_theorem1(args, out) -> int:
    N, M = _terms(args), _mod(args, 8)
    claims = congruence.conjecture_claims()
    s = named_series("c5", N, M)
    pairs = [(c, congruence.default_nmax(c, N)) for c in claims]
    reports = [congruence.check_claim(s, c, n) for c, n in pairs]
    return _emit(args, reports, {"terms": N, "mod": M}, out)


def cmd_theorem2(args, out) -> int:
    try:
        claim = congruence.theorem2_family(args.p, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.nmax is not None:
        n_max = args.nmax
        N = congruence.required_order(claim, n_max)
        if args.terms is not None:
            N = max(N, args.terms)
    else:
        N = _terms(args)
        n_max = congruence.default_nmax(claim, N)
    M = _mod(args, 4)
    report = congruence.check_claim(named_series("c5", N, M), claim, n_max)
    if n_max == 0:
        report.info["note"] = f"order {N} reaches no index of this progression"
    params = {"p": args.p, "k": args.k, "A": claim.A, "B": claim.B,
              "nmax": n_max, "terms": N, "mod": M}
    return _emit(args, [report], params, out)


def cmd_wang(args, out) -> int:
    start = time.perf_counter()
    n_max = args.nmax
    s = evaluate("a1", max(n_max - 1, 0), 0, _cache(args))
    violations = []
    for n in range(n_max):
        w = arith.wang_a1(n)
        if w != s[n]:
            violations.append((n, [w, s[n]]))
    report = VerificationReport("wang a1(n) = sigma(3n+2)/3", n_max, violations,
                                time.perf_counter() - start)
    return _emit(args, [report], {"nmax": n_max}, out)


def cmd_audit(args, out) -> int:
    try:
        report = arith.valuation_parity_audit(args.p, args.k, args.nmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _emit(args, [report], {"p": args.p, "k": args.k, "nmax": args.nmax}, out)


def cmd_density(args, out) -> int:
    e = parse(args.series)
    M = args.density_mod if args.density_mod is not None else args.mod
    if M is None or M < 2:
        raise UsageError("density needs --mod M with M >= 2")
    start = time.perf_counter()
    s = evaluate(e, max(args.nmax - 1, 0), M, _cache(args))
    count, frac = congruence.density_scan(s, M, args.nmax)
    report = VerificationReport(f"density {serialize(e)} mod {M}", args.nmax, [],
                                time.perf_counter() - start,
                                info={"count": count, "fraction": frac})
    if args.format == "text":
        out.write(f"{serialize(e)}: {count}/{args.nmax} coefficients = 0 mod {M} "
                  f"(fraction {frac:.6f})\n")
        return EXIT_OK
    _emit(args, [report], {"series": serialize(e), "mod": M, "nmax": args.nmax}, out)
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    ids = identities.catalog() + identities.chain_checks()
    claims = congruence.builtin_claims()
    if args.format == "json":
        doc = {"command": "catalog", "params": {},
               "identities": [{"name": e.name, "lhs": e.lhs, "rhs": e.rhs,
                               "modulus": e.modulus, "default_order": e.default_order,
                               "lhs_dissect": e.lhs_dissect} for e in ids],
               "claims": [{"name": c.name, "series": c.series_name, "A": c.A, "B": c.B,
                           "M": c.M, "nmax": n} for c, n in claims]}
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    for e in ids:
        mod = f" (mod {e.modulus})" if e.modulus else ""
        lhs = e.lhs if not e.lhs_dissect else f"dissect({e.lhs}; {e.lhs_dissect[0]}, {e.lhs_dissect[1]})"
        out.write(f"{e.name}: {lhs} == {e.rhs}{mod}\n")
    for c, n in claims:
        out.write(f"claim {c.name}  nmax={n}\n")
    return EXIT_OK


COMMANDS = {
    "expand": cmd_expand,
    "verify-id": cmd_verify_id,
    "verify-cong": cmd_verify_cong,
    "theorem1": cmd_theorem1,
    "theorem2": cmd_theorem2,
    "wang": cmd_wang,
    "audit-valuation": cmd_audit,
    "density": cmd_density,
    "catalog": cmd_catalog,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and friends
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (NonUnitError, RingMismatchError, ArithmeticError, ValueError,
            identities.IdentityEvaluationError) as exc:
        err.write(f"computation error: {exc}\n")
        return EXIT_COMPUTE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
