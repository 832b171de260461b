"""Command-line interface.

Subcommands mirror the library: orbit, zsigmondy, height, canonical-height,
classify, map-analyze, prop-old, abc, roth-scan, mason, galois-tower.
Output is a schema-validated JSON report (default), a flat table, or CSV.
Exit codes: 0 success, 1 usage/parse error, 2 resource cap exceeded,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import abclab, galois, reports, zsigmondy
from .cache import ENV_CACHE_DIR, CacheEntry, OrbitCache, config_hash
from .errors import (
    BadPrimeError,
    CacheError,
    ExprSyntaxError,
    InvariantError,
    MapConstructionError,
    ResourceCapError,
)
from .exprparse import parse_polynomial, parse_rational_function
from .ffplaces import FFElement, mason_check
from .heights import canonical_height, classify_point, weil_height
from .maps import INFINITY, RationalMap, RationalMapFF


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_point(text: str):
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INFINITY
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"cannot parse point {text!r}: {exc}")


def _parse_ff_point(text: str):
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INFINITY
    return FFElement.parse(text)


def _parse_ff_scan_poly(text: str):
    """Polynomial in x with coefficients in Q(t)."""
    one = FFElement.from_const(1)
    num, den = parse_rational_function(
        text, var="x", second_var="t", second_value=FFElement.gen(), one=one
    )
    from . import polys

    g = polys.gcd(num, den)
    num = polys.exact_div(num, g)
    den = polys.exact_div(den, g)
    if polys.degree(den) > 0:
        raise _UsageError("F must be a polynomial in x")
    return polys.strip([c / den[0] for c in num])


def _cache_path(arg_path):
    if arg_path is None:
        return None
    base = os.environ.get(ENV_CACHE_DIR)
    if base and not os.path.isabs(arg_path):
        return os.path.join(base, arg_path)
    return arg_path


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbitprimes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_map=True, with_alpha=True):
        if with_map:
            p.add_argument("--map", required=True, help="rational map expression in x")
        if with_alpha:
            p.add_argument("--alpha", required=True, help="starting point (rational or 'inf')")
        p.add_argument("--format", choices=("json", "table", "csv"), default="json")
        p.add_argument("--field", choices=("q", "qt"), default="q")

    p = sub.add_parser("orbit", help="orbit values with termination reason")
    common(p)
    p.add_argument("--max-n", type=int, default=zsigmondy.DEFAULT_PRIMITIVE_DEPTH)
    p.add_argument("--cache", help="orbit cache file (JSON lines)")

    p = sub.add_parser("zsigmondy", help="primitive prime divisor scan")
    common(p)
    p.add_argument("--max-n", type=int, default=zsigmondy.DEFAULT_PRIMITIVE_DEPTH)
    p.add_argument("--squarefree-max-n", type=int, default=zsigmondy.DEFAULT_SQUAREFREE_DEPTH)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache", help="orbit cache file (JSON lines)")

    p = sub.add_parser("height", help="Weil height of a point")
    p.add_argument("--point", required=True)
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")
    p.add_argument("--field", choices=("q", "qt"), default="q")

    p = sub.add_parser("canonical-height", help="canonical height with rigorous radius")
    common(p)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("classify", help="wandering / preperiodic classification")
    common(p)
    p.add_argument("--max-steps", type=int, default=2000)

    p = sub.add_parser("map-analyze", help="bad reduction, power map, ramification verdict")
    common(p, with_alpha=False)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--depth", type=int, default=3, help="ramification scan depth")
    p.add_argument("--threshold", type=int, default=None)

    p = sub.add_parser("prop-old", help="shared-prime mass diagnostic")
    common(p)
    p.add_argument("--F", required=True, help="polynomial factor of the level-i numerator")
    p.add_argument("--i", type=int, required=True, help="iterate level of F")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--delta", type=str, default="0.125")
    p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("abc", help="abc triple quality")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")

    p = sub.add_parser("roth-scan", help="radical lower-bound scan")
    p.add_argument("--F", required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--field", choices=("q", "qt"), default="q")
    p.add_argument("--height-bound", type=int, default=100, help="H over Q")
    p.add_argument("--max-degree", type=int, default=2, help="sample degree over Q(t)")
    p.add_argument("--coeff-bound", type=int, default=2, help="sample coefficients over Q(t)")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--samples", action="store_true", help="include per-sample rows")
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")

    p = sub.add_parser("mason", help="polynomial abc inequality check")
    p.add_argument("--a", required=True, help="polynomial in t")
    p.add_argument("--b", required=True, help="polynomial in t")
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")

    p = sub.add_parser("galois-tower", help="square-free certificates for x^2 + a")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("json", "table", "csv"), default="json")

    return parser


def _budget(args):
    from .intplaces import DEFAULT_BUDGET

    return args.budget if getattr(args, "budget", None) else DEFAULT_BUDGET


def _build_map(args):
    if args.field == "qt":
        return RationalMapFF.parse(args.map)
    return RationalMap.parse(args.map)


def _alpha_for(args, rmap):
    if isinstance(rmap, RationalMapFF):
        return _parse_ff_point(args.alpha)
    return _parse_point(args.alpha)


def _alpha_str(alpha):
    if alpha is INFINITY:
        return "inf"
    return str(alpha)


def _run_orbit_like(args, want_zsigmondy: bool):
    rmap = _build_map(args)
    alpha = _alpha_for(args, rmap)
    seed_values = None
    factor_cache = None
    cache = None
    chash = None
    cache_path = _cache_path(getattr(args, "cache", None))
    if cache_path:
        if args.field == "qt":
            raise _UsageError("the orbit cache is supported over Q only")
        cache = OrbitCache(cache_path)
        chash = config_hash(args.field, rmap.to_string(), _alpha_str(alpha))
        entries = cache.load(chash)
        seed_values = [e.value for e in entries]
        factor_cache = {e.n: e.factored for e in entries if e.factored is not None}
    config = {
        "command": "zsigmondy" if want_zsigmondy else "orbit",
        "map": args.map,
        "alpha": args.alpha,
        "field": args.field,
        "max_n": args.max_n,
    }
    if want_zsigmondy:
        report = zsigmondy.zsigmondy_report(
            rmap,
            alpha,
            depth=args.max_n,
            budget=_budget(args),
            squarefree_depth=args.squarefree_max_n,
            workers=args.workers,
            seed_values=seed_values,
            factor_cache=factor_cache,
        )
        config["squarefree_max_n"] = args.squarefree_max_n
        built = reports.build_zsigmondy(report, config)
    else:
        records, termination = zsigmondy.orbit(
            rmap, alpha, args.max_n, seed_values=seed_values
        )
        report = zsigmondy.ZsigmondyReport(
            map_str=rmap.to_string(),
            alpha_str=_alpha_str(alpha),
            field="Q" if args.field == "q" else "Q(t)",
            depth=args.max_n,
            squarefree_depth=0,
            records=records,
            zsigmondy_set=(),
            squarefree_zsigmondy_set=(),
            squarefree_unresolved=(),
            termination=termination,
            notes=None,
        )
        built = reports.build_orbit(report, config)
    if cache is not None:
        known = len(seed_values or [])
        new_entries = []
        for rec in report.records:
            if rec.n <= known:
                continue
            if rec.value is INFINITY:
                numer, denom = 1, 0
            else:
                frac = Fraction(rec.value)
                numer, denom = frac.numerator, frac.denominator
            new_entries.append(
                CacheEntry(
                    map_hash=chash,
                    n=rec.n,
                    numer=numer,
                    denom=denom,
                    factored=getattr(rec, "factored", None),
                )
            )
        cache.append(new_entries)
    return built


def dispatch(args) -> dict:
    command = args.command
    if command in ("orbit", "zsigmondy"):
        return _run_orbit_like(args, want_zsigmondy=command == "zsigmondy")

    if command == "height":
        config = {"command": "height", "point": args.point, "field": args.field}
        if args.field == "qt":
            point = _parse_ff_point(args.point)
            hv = weil_height(point)
            return reports.build_height(str(point), hv, config)
        point = _parse_point(args.point)
        hv = weil_height(point)
        return reports.build_height(reports.rational_str(point), hv, config)

    if command == "canonical-height":
        if args.field == "qt":
            raise _UsageError("canonical heights are implemented over Q only")
        rmap = RationalMap.parse(args.map)
        alpha = _parse_point(args.alpha)
        est = canonical_height(rmap, alpha, tol=args.tol)
        config = {
            "command": "canonical-height",
            "map": args.map,
            "alpha": args.alpha,
            "tol": args.tol,
        }
        return reports.build_canonical(rmap.to_string(), _alpha_str(alpha), est, config)

    if command == "classify":
        if args.field == "qt":
            raise _UsageError("classification is implemented over Q only")
        rmap = RationalMap.parse(args.map)
        alpha = _parse_point(args.alpha)
        cls = classify_point(rmap, alpha, max_steps=args.max_steps)
        config = {
            "command": "classify",
            "map": args.map,
            "alpha": args.alpha,
            "max_steps": args.max_steps,
        }
        return reports.build_classify(rmap.to_string(), _alpha_str(alpha), cls, config)

    if command == "map-analyze":
        if args.field == "qt":
            raise _UsageError("map analysis is implemented over Q only")
        rmap = RationalMap.parse(args.map)
        bad = rmap.bad_reduction_primes(budget=_budget(args))
        verdict = rmap.dynamical_ramification_verdict(args.depth, threshold=args.threshold)
        config = {
            "command": "map-analyze",
            "map": args.map,
            "depth": args.depth,
        }
        return reports.build_map_analyze(rmap, bad, verdict, config)

    if command == "prop-old":
        rmap = RationalMap.parse(args.map)
        alpha = _parse_point(args.alpha)
        F = parse_polynomial(args.F, var="x")
        delta = float(Fraction(args.delta))
        report = zsigmondy.prop_old_diagnostic(
            rmap, alpha, F, args.i, args.max_n, delta, budget=_budget(args)
        )
        config = {
            "command": "prop-old",
            "map": args.map,
            "alpha": args.alpha,
            "F": args.F,
            "i": args.i,
            "max_n": args.max_n,
            "delta": args.delta,
        }
        return reports.build_prop_old(report, config)

    if command == "abc":
        a = Fraction(args.a)
        b = Fraction(args.b)
        triple = abclab.abc_quality(a, b, budget=_budget(args))
        config = {"command": "abc", "a": args.a, "b": args.b}
        return reports.build_abc(triple, config)

    if command == "roth-scan":
        config = {
            "command": "roth-scan",
            "F": args.F,
            "epsilon": args.epsilon,
            "field": args.field,
        }
        if args.field == "q":
            F = parse_polynomial(args.F, var="x")
            report = abclab.roth_scan_q(
                F, args.epsilon, args.height_bound, budget=_budget(args)
            )
            config["height_bound"] = args.height_bound
        else:
            F = _parse_ff_scan_poly(args.F)
            report = abclab.roth_scan_ff(
                F,
                args.epsilon,
                max_degree=args.max_degree,
                coeff_bound=args.coeff_bound,
                budget=_budget(args),
            )
            config["max_degree"] = args.max_degree
            config["coeff_bound"] = args.coeff_bound
        return reports.build_roth(report, config, include_samples=args.samples)

    if command == "mason":
        a = parse_polynomial(args.a, var="t")
        b = parse_polynomial(args.b, var="t")
        report = mason_check(a, b)
        config = {"command": "mason", "a": args.a, "b": args.b}
        return reports.build_mason(report, config)

    if command == "galois-tower":
        records = galois.tower_report(args.a, args.max_n, budget=_budget(args))
        config = {"command": "galois-tower", "a": args.a, "max_n": args.max_n}
        return reports.build_galois(records, config)

    raise _UsageError(f"unknown command {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        report = dispatch(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ExprSyntaxError, MapConstructionError, CacheError, BadPrimeError,
            ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        print(reports.to_json(report))
    elif fmt == "table":
        print(reports.to_table(report))
    else:
        print(reports.to_csv(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
