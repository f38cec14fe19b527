"""dioforge command line.

Exit status: 0 when a command ran to completion (whatever the mathematical
outcome), 2 for usage or hypothesis errors, 3 when an internal invariant
breaks (e.g. no certificate for some alpha under the theorem's hypotheses).
Record streams go to stdout as JSON lines or CSV; summaries go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from .cache import RunCache, RunRecord, config_digest
from .curves import SingularModelError, build_curve, check_torsion_free
from .diophantine import (
    HypothesisError,
    SearchConfig,
    SolutionTriple,
    default_workers,
    make_params,
    search,
)
from .intmath import FactorBudget
from .obstruction import (
    CertificateGenerationError,
    generate_certificate,
    local_solvability,
    sweep,
    verify_certificate,
)
from .table import DEFAULT_X_BOUND, DEFAULT_Z_BOUND, reproduce_table

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3

# Options whose values may start with "-" (e.g. "--alpha-range -1000:1000").
_RANGE_OPTIONS = ("--alpha-range",)

# x-values per resumable search block.
_SEARCH_BLOCK = 32


class UsageError(Exception):
    pass


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _add_param_flags(p: argparse.ArgumentParser, with_r: bool = True) -> None:
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    if with_r:
        p.add_argument("--r", type=int, default=1)
        p.add_argument("--b", type=int, help="optional cross-check; must equal 2^d*a - 3^r")
        p.add_argument("--validation", choices=["strict", "exploratory"], default="strict")


def _params(args, r: int | None = None):
    params = make_params(args.a, args.d, args.r if r is None else r, getattr(args, "validation", "strict"))
    if getattr(args, "b", None) is not None and args.b != params.b:
        raise UsageError(f"--b {args.b} does not match 2^d*a - 3^r = {params.b}")
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dioforge", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=default_workers(), help="worker processes")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="bounded search for integer solutions")
    _add_param_flags(s)
    s.add_argument("--x", type=int, default=DEFAULT_X_BOUND, help="search |x| <= X")
    s.add_argument("--z", type=int, default=DEFAULT_Z_BOUND, help="search |z| <= Z")
    s.add_argument("--x-min", type=int)
    s.add_argument("--x-max", type=int)
    s.add_argument("--z-min", type=int)
    s.add_argument("--z-max", type=int)
    s.add_argument("--sieve", choices=["on", "off"], default="on")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--cache-dir")
    s.add_argument("--no-cache", action="store_true")

    o = sub.add_parser("obstruct", help="congruence certificates for fixed x = alpha (r = 1)")
    _add_param_flags(o, with_r=False)
    g = o.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=int)
    g.add_argument("--alpha-range", type=_int_range, metavar="LO:HI")
    o.add_argument("--emit", choices=["all", "summary"], default="all", help="print every certificate or only the summary")

    lo = sub.add_parser("local", help="is the equation solvable modulo M?")
    _add_param_flags(lo)
    lo.add_argument("--modulus", type=int, required=True)

    for name, help_ in (("curve", "hyperelliptic model for z = m"), ("torsion", "Grant/Nagell-Lutz torsion report")):
        c = sub.add_parser(name, help=help_)
        c.add_argument("--m", type=int, required=True)
        _add_param_flags(c, with_r=False)
        c.add_argument("--format", choices=["json", "text"], default="json")
        if name == "torsion":
            c.add_argument("--trial-bound", type=int, default=FactorBudget.trial_bound)
            c.add_argument("--rho-iterations", type=int, default=FactorBudget.rho_iterations)

    t = sub.add_parser("table", help="re-derive the published table of examples")
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.add_argument("--x", type=int, default=DEFAULT_X_BOUND)
    t.add_argument("--z", type=int, default=DEFAULT_Z_BOUND)
    t.add_argument("--no-search", action="store_true", help="only evaluate the claimed solutions")
    return parser


def _emit_triples(triples: Sequence[SolutionTriple], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "y", "z"])
        w.writerows(triples)
    else:
        for t in triples:
            out.write(json.dumps({"x": t.x, "y": t.y, "z": t.z}) + "\n")


def _search_with_cache(params, config: SearchConfig, cache: RunCache | None) -> list[SolutionTriple]:
    if cache is None:
        return search(params, config)
    inputs = {
        "command": "search",
        "a": params.a,
        "d": params.d,
        "r": params.r,
        "validation": params.validation.value,
        "x_range": list(config.x_range),
        "z_range": list(config.z_range),
        "sieve": config.sieve_enabled,
    }
    digest = config_digest(inputs)
    done, partials = cache.lookup(digest)
    if done is not None:
        return [SolutionTriple(*t) for t in done.results]

    found = [SolutionTriple(*t) for rec in partials for t in rec.results]
    x_lo, x_hi = config.x_range
    if partials:
        x_lo = max(rec.completed_through_x for rec in partials) + 1
    start = x_lo
    while start <= x_hi:
        stop = min(start + _SEARCH_BLOCK - 1, x_hi)
        block = SearchConfig((start, stop), config.z_range, config.sieve_enabled, config.worker_count)
        got = search(params, block)
        found.extend(got)
        cache.append(RunRecord("search", inputs, digest, [list(t) for t in got], "partial", stop))
        start = stop + 1
    found = sorted(set(found), key=lambda t: (t.x, t.z, t.y))
    cache.append(RunRecord("search", inputs, digest, [list(t) for t in found], "complete", x_hi))
    return found


def cmd_search(args, out, err) -> int:
    params = _params(args)
    x_range = (args.x_min if args.x_min is not None else -args.x, args.x_max if args.x_max is not None else args.x)
    z_range = (args.z_min if args.z_min is not None else -args.z, args.z_max if args.z_max is not None else args.z)
    try:
        config = SearchConfig(x_range, z_range, args.sieve == "on", max(1, args.jobs))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cache = None if args.no_cache else RunCache.from_env(args.cache_dir)
    triples = _search_with_cache(params, config, cache)
    _emit_triples(triples, args.format, out)
    sieve = "on" if config.sieve_enabled and params.strict else "off"
    where = f"x in [{x_range[0]}, {x_range[1]}], z in [{z_range[0]}, {z_range[1]}], sieve {sieve}"
    if triples:
        err.write(f"{len(triples)} solution(s) for {params.equation()} with {where}\n")
    else:
        err.write(f"no solutions in range for {params.equation()} with {where}\n")
    return EXIT_OK


def cmd_obstruct(args, out, err) -> int:
    params = make_params(args.a, args.d, 1)
    if args.alpha is not None:
        try:
            cert = generate_certificate(params, args.alpha)
        except CertificateGenerationError as exc:
            err.write(f"certificate generation failed: {exc}\n")
            return EXIT_INTERNAL
        if not verify_certificate(params, cert):
            err.write(f"certificate for alpha={args.alpha} failed verification\n")
            return EXIT_INTERNAL
        out.write(json.dumps(cert.to_record()) + "\n")
        err.write("certified=1 failures=0\n")
        return EXIT_OK

    summary = sweep(params, args.alpha_range, workers=max(1, args.jobs))
    if args.emit == "all":
        for cert in summary.certificates:
            out.write(json.dumps(cert.to_record()) + "\n")
    err.write(f"certified={summary.certified} failures={len(summary.failures)}\n")
    if summary.failures:
        err.write(f"failing alpha: {summary.failures}\n")
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_local(args, out, err) -> int:
    params = _params(args)
    try:
        ok = local_solvability(params, args.modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(json.dumps({"modulus": args.modulus, "solvable": ok}) + "\n")
    return EXIT_OK


def _curve(args):
    if args.m < 1:
        raise UsageError(f"--m must be a positive integer, got {args.m}")
    return build_curve(args.m, make_params(args.a, args.d, 1))


def cmd_curve(args, out, err) -> int:
    curve = _curve(args)
    if args.format == "text":
        out.write(curve.describe() + "\n")
    else:
        rec = curve.to_record()
        rec["equation"] = f"Y^2 = {curve.f}"
        out.write(json.dumps(rec) + "\n")
    return EXIT_OK


def cmd_torsion(args, out, err) -> int:
    curve = _curve(args)
    report = check_torsion_free(curve, FactorBudget(args.trial_bound, args.rho_iterations))
    if args.format == "text":
        out.write(curve.describe() + "\n")
        out.write(f"verdict {report.verdict.value}\n{report.notes}\n")
        for x, y, why in report.candidates_checked:
            out.write(f"  ({x}, {y}): {why}\n")
    else:
        out.write(json.dumps(report.to_record()) + "\n")
    return EXIT_OK


def cmd_table(args, out, err) -> int:
    rows = reproduce_table(args.x, args.z, run_search=not args.no_search, workers=max(1, args.jobs))
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["a", "d", "r", "equation", "solution", "status"])
        for row in rows:
            w.writerow([row.a, row.d, row.r, row.equation, row.solution_text(), row.status])
    else:
        for row in rows:
            out.write(json.dumps(row.to_record()) + "\n")
    for row in rows:
        if row.note:
            err.write(f"({row.a},{row.d},{row.r}) {row.status}: {row.note}\n")
    return EXIT_OK


_COMMANDS = {
    "search": cmd_search,
    "obstruct": cmd_obstruct,
    "local": cmd_local,
    "curve": cmd_curve,
    "torsion": cmd_torsion,
    "table": cmd_table,
}


def _join_range_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = _join_range_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out, err)
    except HypothesisError as exc:
        err.write(f"hypothesis violated ({exc.hypothesis}): {exc}\n")
        return EXIT_USAGE
    except (UsageError, SingularModelError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
