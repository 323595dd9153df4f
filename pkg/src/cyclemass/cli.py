"""Command-line entry point: ``cyclemass <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 input data violating an invariant (e.g. weights not summing to 1).
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import __version__
from .blowup import spec_leading_term
from .bounds import verify_suite
from .errors import (
    CycleMassError,
    EmptySearch,
    InvalidParameter,
    MassInvariantError,
    ParseError,
    UnsupportedSize,
)
from .formats import dump_records, read_blowup_spec, read_mass_file
from .graphs import GENERATE_MAX, enumerate_graphs, to_graph6
from .mass import beta, monte_carlo_cycle_probability
from .optimize import AscentConfig, search_opt

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exact_str(x) -> str:
    return str(x) if isinstance(x, Fraction) else "-"


def _check_m(m):
    if m < 3:
        raise UsageError("--m must be at least 3")


def cmd_beta(args) -> int:
    _check_m(args.m)
    mu = read_mass_file(args.mass_file, exact=True if args.exact else None)
    b = beta(mu, args.m)
    rec = {"m": args.m, "beta_exact": _exact_str(b), "beta_float": float(b)}
    if args.format == "json":
        _emit(dump_records([rec], "json"), args.out)
    else:
        _emit(f"{rec['beta_exact']}\n{float(b):.12g}\n", args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    _check_m(args.m)
    if args.n_max > GENERATE_MAX:
        raise UsageError(f"--n-max must be at most {GENERATE_MAX}")
    if args.tol <= 0 or args.restarts < 1:
        raise UsageError("--tol must be positive and --restarts at least 1")
    cfg = AscentConfig(tol=args.tol, restarts=args.restarts, seed=args.seed)
    rep = search_opt(args.m, range(args.m, args.n_max + 1), cfg, workers=args.threads)
    label = "exploratory" if rep.exploratory else "proven-case"
    header = {
        "kind": "search",
        "m": rep.m,
        "n_range": f"{rep.m}..{args.n_max}",
        "status": label,
        "candidates": len(rep.table),
        "seed": args.seed,
        "restarts": args.restarts,
    }
    best = {
        "kind": "best",
        "graph6": rep.best_graph6,
        "canonical": rep.best_canonical,
        "beta": rep.best_beta,
        "beta_times_m_to_m": rep.best_beta * rep.m**rep.m,
    }
    rows = [dict(kind="candidate", **r.record()) for r in rep.table]
    if args.format == "json":
        text = dump_records([header, best, *rows], "json")
    else:
        lines = [f"# support search m={rep.m} n={rep.m}..{args.n_max} ({label})"]
        lines.append(f"best graph6={rep.best_graph6} beta={rep.best_beta:.6e}")
        lines.append(dump_records(rows, "text").rstrip("\n"))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_m(args.m)
    rep = verify_suite(args.m)
    if args.format == "json":
        text = dump_records([rep.record()], "json")
    else:
        lines = []
        if rep.partial:
            lines.append(f"# partial suite for m={args.m}: vertex-mass bounds only")
        else:
            lines.append(f"# full inequality suite for m={args.m}")
        lines += [c.line() for c in rep.checks]
        lines.append(f"{'ALL PASS' if rep.passed else 'FAILED'} ({len(rep.checks)} checks)")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if not rep.passed:
        for c in rep.failures:
            print(f"failed: {c.name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_blowup(args) -> int:
    _check_m(args.m)
    spec = read_blowup_spec(args.spec_file)
    lt = spec_leading_term(spec, args.m)
    rec = {
        "base": to_graph6(spec.base),
        "m": args.m,
        "n_bag": lt.realized_n,
        "n_total": spec.total_vertices,
        "count": lt.count,
        "projection": lt.projection,
        "ratio": lt.ratio,
    }
    if args.format == "json":
        _emit(dump_records([rec], "json"), args.out)
    else:
        _emit("# n counts bag vertices only\n" + dump_records([rec], "text"), args.out)
    return EXIT_OK


def cmd_mc(args) -> int:
    _check_m(args.m)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    mu = read_mass_file(args.mass_file)
    res = monte_carlo_cycle_probability(mu, args.m, args.samples, args.seed, workers=args.threads)
    target = math.factorial(args.m) * beta(mu, args.m)
    rec = {
        "m": args.m,
        "samples": res.samples,
        "seed": res.seed,
        "estimate": res.estimate,
        "stderr": res.stderr,
        "target": float(target),
        "target_exact": _exact_str(target),
        "z": res.zscore(float(target)),
    }
    _emit(dump_records([rec], args.format), args.out)
    return EXIT_OK


def cmd_graphs(args) -> int:
    gs = enumerate_graphs(
        args.n, min_degree=args.min_degree, connected=args.connected, max_degree=args.max_degree
    )
    _emit("".join(to_graph6(G) + "\n" for G in gs), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclemass", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, threads=False):
        sp.add_argument("--m", type=int, required=True, help="cycle length")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if seed:
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        if threads:
            sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("beta", help="evaluate the cycle objective of a mass file")
    sp.add_argument("mass_file")
    sp.add_argument("--exact", action="store_true", help="require an exact rational mass")
    common(sp)
    sp.set_defaults(func=cmd_beta)

    sp = sub.add_parser("search", help="optimise over all candidate supports")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--exact", action="store_true", help="accepted for symmetry; search is float")
    common(sp, seed=True, threads=True)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="run the exact inequality suite")
    sp.add_argument("--exact", action="store_true", help="all checks are exact already")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("blowup", help="count long cycles in a blow-up spec")
    sp.add_argument("spec_file")
    common(sp)
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("mc", help="Monte Carlo estimate of the cycle-formation probability")
    sp.add_argument("mass_file")
    sp.add_argument("--samples", type=int, default=10**6)
    common(sp, seed=True, threads=True)
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("graphs", help="list non-isomorphic graphs as graph6")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--min-degree", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_graphs)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, InvalidParameter, UnsupportedSize, EmptySearch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MassInvariantError as exc:
        print(f"invalid mass: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CycleMassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
