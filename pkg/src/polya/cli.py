"""Command-line front end.

Exit codes: 0 success, 1 a verification did not reproduce, 2 unsupported
input, 3 a search or effort bound was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import arith, biquad, constructors, cubic, density, formoracle, quadfield
from .config import settings
from .errors import DomainError, EffortExceeded, SearchExhausted

EXIT_OK, EXIT_FAILED, EXIT_UNSUPPORTED, EXIT_BOUND = 0, 1, 2, 3


@dataclass(frozen=True)
class UnitCacheEntry:
    d: int
    x: int
    y: int
    norm: int

    def line(self) -> str:
        return f"{self.d} {self.x} {self.y} {self.norm}"


def cache_load(path: str | Path) -> dict[int, UnitCacheEntry]:
    """Read ``d x y norm`` lines; bad lines are skipped with a warning."""
    entries: dict[int, UnitCacheEntry] = {}
    path = Path(path)
    if not path.exists():
        return entries
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        if not raw.strip():
            continue
        try:
            d, x, y, norm = (int(v) for v in raw.split())
            if norm not in (1, -1) or x * x - d * y * y != 4 * norm:
                raise ValueError("Pell identity fails")
        except ValueError as exc:
            print(f"warning: {path}:{lineno}: skipping corrupt entry ({exc})", file=sys.stderr)
            continue
        entries.setdefault(d, UnitCacheEntry(d, x, y, norm))
    return entries


def cache_store(path: str | Path, entries: Iterable[UnitCacheEntry]) -> None:
    """Append entries whose d is not in the file yet."""
    path = Path(path)
    have = cache_load(path)
    new = [e for e in entries if e.d not in have]
    if new:
        with path.open("a") as fh:
            for e in new:
                fh.write(e.line() + "\n")


def _emit(payload: dict, tsv: bool) -> None:
    if not tsv:
        print(json.dumps(payload))
        return
    keys = list(payload)
    cells = [v if isinstance(v, (int, float, str)) else json.dumps(v) for v in payload.values()]
    print("\t".join(keys))
    print("\t".join(str(c) for c in cells))


def _cmd_quad(args) -> tuple[dict, int]:
    d = args.d
    try:
        u = quadfield.fundamental_unit(d)
        unit = {"x": u.x, "y": u.y, "norm": u.norm}
    except EffortExceeded:
        unit = None
    out = {
        "d": d,
        "rank": quadfield.quad_polya_rank(d),
        "ramified": quadfield.ramified_primes(d),
        "h1_rank": quadfield.quad_h1_rank(d),
        "unit": unit,
    }
    return out, EXIT_OK


def _cmd_oracle(args) -> tuple[dict, int]:
    G, members = formoracle.polya_subgroup(args.d)
    kappa = formoracle.wide_quotient_kernel(G.D, G)
    h = G.order if kappa == G.identity else G.order // 2
    out = {
        "d": args.d,
        "discriminant": G.D,
        "narrow_class_number": G.order,
        "class_number": h,
        "rank": formoracle.polya_group_oracle(args.d),
    }
    return out, EXIT_OK


def _cmd_biquad(args) -> tuple[dict, int]:
    K = biquad.biquad_field(args.m, args.n)
    out = {
        "m": args.m,
        "n": args.n,
        "subfields": [K.d1, K.d2, K.d3],
        "ramified": [list(r) for r in K.ramified],
        "h1_rank": biquad.h1_rank_biquad(args.m, args.n),
        "rank": biquad.polya_rank_biquad(args.m, args.n),
    }
    return out, EXIT_OK


def _cmd_cubic(args) -> tuple[dict, int]:
    n = args.n
    K = cubic.simplest_cubic(n)
    out = {
        "n": n,
        "h": K.hn,
        "squarefree": K.squarefree,
        "discriminant": cubic.discriminant_simplest_cubic(n),
        "ramified": list(K.ramified),
        "r_k": K.r_K,
        "po_order": cubic.polya_order_cubic(n),
    }
    return out, EXIT_OK


def _cmd_tuple(args) -> tuple[dict, int]:
    cert = constructors.crt_prime_tuple(args.t, args.p, args.q, settings.search_bound)
    return cert.to_json(), EXIT_OK


def _cmd_verify_biquad(args) -> tuple[dict, int]:
    report = constructors.verify_theorem_biquad(args.t, args.q, settings.search_bound)
    return report.to_json(), EXIT_OK if report.passed else EXIT_FAILED


def _cmd_verify_cubic(args) -> tuple[dict, int]:
    cert = cubic.find_large_polya_cubic(args.M, settings.search_bound)
    problems = cubic.check_certificate(cert)
    out = cert.to_json()
    out["verified"] = not problems
    out["problems"] = problems
    return out, EXIT_FAILED if problems else EXIT_OK


def _cmd_density(args) -> tuple[dict, int]:
    report = density.density_report(args.X, args.a, args.m, args.cutoff)
    out = report.to_json()
    if args.figure:
        from .plotting import density_figure

        xs, ratios = density.ratio_curve(args.X, args.a, args.m)
        out["figure"] = str(density_figure(report, xs, ratios, args.figure))
    return out, EXIT_OK


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="tsv", action="store_false", help="emit JSON (default)", **kw)
    fmt.add_argument("--tsv", dest="tsv", action="store_true", help="emit tab-separated values", **kw)
    parser.add_argument("--cache", metavar="PATH", help="fundamental-unit cache file", **kw)
    parser.add_argument("--search-bound", type=int, metavar="B", help="terms per prime scan", **kw)
    parser.add_argument("--mr-rounds", type=int, metavar="R", help="Miller-Rabin rounds above 2^64", **kw)
    parser.add_argument("--cf-bound", type=int, metavar="B", help="continued-fraction period bound", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polya",
        description="Polya groups of quadratic, bi-quadratic and simplest cubic fields.",
    )
    _global_options(parser, suppress=False)
    parser.set_defaults(tsv=False, cache=None, search_bound=None, mr_rounds=None, cf_bound=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("quad", _cmd_quad, "Polya rank of Q(sqrt d) via units")
    p.add_argument("--d", type=int, required=True)
    p = add("oracle", _cmd_oracle, "Polya rank of Q(sqrt d) via form class groups")
    p.add_argument("--d", type=int, required=True)
    p = add("biquad", _cmd_biquad, "Polya rank of Q(sqrt m, sqrt n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("cubic", _cmd_cubic, "simplest cubic field K_n")
    p.add_argument("--n", type=int, required=True)
    p = add("tuple", _cmd_tuple, "CRT prime tuple for a Sophie Germain pair")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = add("verify-biquad", _cmd_verify_biquad, "check the consecutive bi-quadratic family")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = add("verify-cubic", _cmd_verify_cubic, "certify |Po(K_p)| > M")
    p.add_argument("--M", type=float, required=True)
    p = add("density", _cmd_density, "square-free values of h at primes = a (mod m)")
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=10_000)
    p.add_argument("--figure", metavar="PATH", help="write a PNG of the running ratio")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_UNSUPPORTED if exc.code else EXIT_OK
    saved = vars(settings).copy()
    try:
        return _dispatch(args)
    finally:
        vars(settings).update(saved)


def _dispatch(args: argparse.Namespace) -> int:
    if args.search_bound is not None:
        settings.search_bound = args.search_bound
    if args.mr_rounds is not None:
        settings.mr_rounds = args.mr_rounds
    if args.cf_bound is not None:
        settings.cf_bound = args.cf_bound
    if args.cache:
        quadfield.seed_units(
            quadfield.QuadUnit(e.d, e.x, e.y, e.norm) for e in cache_load(args.cache).values()
        )
    try:
        payload, code = args.func(args)
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (SearchExhausted, EffortExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BOUND
    finally:
        if args.cache:
            cache_store(
                args.cache,
                (UnitCacheEntry(u.d, u.x, u.y, u.norm) for u in quadfield.known_units().values()),
            )
    _emit(payload, args.tsv)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
