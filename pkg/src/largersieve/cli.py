"""Command-line entry point: ``largersieve <experiment> [options]``.

Exit codes: 0 success, 1 usage error, 2 invariant violation detected during
the run, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import DomainError, InvariantViolation, ResourceError
from .experiments import REGISTRY
from .report import write_outputs

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_RESOURCE = 0, 1, 2, 3

# checked after the config file is merged, so they may come from either source
REQUIRED = {"vdw-census": ("n", "B"), "disc-square": ("n",), "bound-calc": ("gg", "kappa", "n", "B")}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--seed", type=int, default=0, help="global seed (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.add_argument("--shards", type=int, default=1, help="work shards; results do not depend on it")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--format", choices=("csv", "json", "both"), default="both")
    p.add_argument("--config", help="JSON file whose keys mirror the flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="largersieve", description="Larger-sieve and Galois-image experiments.")
    sub = parser.add_subparsers(dest="experiment", parser_class=_Parser)

    p = sub.add_parser("sieve-demo", help="larger-sieve bounds for structured integer sets")
    p.add_argument("--B", type=int, default=10**4)
    p.add_argument("--sets", nargs="+", default=["squares", "cubes", "quad"], choices=("squares", "cubes", "quad", "random"))
    p.add_argument("--jmin", type=int, default=11, help="smallest sieving prime")

    p = sub.add_parser("vdw-census", help="Galois labels over a box of monic polynomials")
    p.add_argument("--n", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--mode", choices=("auto", "exact", "certificate"), default="auto")
    p.add_argument("--prime-budget", dest="prime_budget", type=int, default=200)
    p.add_argument("--self-test", dest="self_test", action="store_true", help="compare against a single-shard run")

    p = sub.add_parser("disc-square", help="count boxes with square discriminant")
    p.add_argument("--n", type=int)
    p.add_argument("--B-list", dest="B_list", default="10,20,40")

    p = sub.add_parser("gl2-verify", help="trace/determinant counts in GL2(F_l)")
    p.add_argument("--lmax", type=int, default=31)

    p = sub.add_parser("group-indices", help="commutator indices in GL2(Z/m) and transitive unions")
    p.add_argument("--levels", default="2,4,8,12")
    p.add_argument("--nmax", type=int, default=5, help="largest n for the transitive union ratio")

    p = sub.add_parser("ec-census", help="mod-l surjectivity certificates along the Legendre family")
    p.add_argument("--B", type=int, default=50)
    p.add_argument("--ells", default="5,7")
    p.add_argument("--prime-budget", dest="prime_budget", type=int, default=2000)

    p = sub.add_parser("dynamics", help="orbit sizes modulo primes")
    p.add_argument("--phi", default="1,0,1", help="coefficients, highest degree first (default x^2+1)")
    p.add_argument("--P", type=int, default=0)
    p.add_argument("--x", type=int, default=10**5)
    p.add_argument("--eps", type=float)
    p.add_argument("--iters", type=int, default=15)

    p = sub.add_parser("charsum", help="quadratic character equidistribution scan")
    p.add_argument("--degrees", default="3,5")
    p.add_argument("--coeff-bound", dest="coeff_bound", type=int, default=3)
    p.add_argument("--pmax", type=int, default=500)

    p = sub.add_parser("bound-calc", help="evaluate the Frobenius-hit bound")
    p.add_argument("--gg", type=int, help="order of the geometric monodromy group")
    p.add_argument("--kappa", help="comma list of size:hits pairs, e.g. 1:6")
    p.add_argument("--S", default="", help="excluded primes")
    p.add_argument("--n", type=int)
    p.add_argument("--B", type=float)
    p.add_argument("--d", type=int, default=1)

    for name, sp in sub.choices.items():
        _common(sp)
    return parser


def _resolve(parser, argv) -> tuple:
    args = parser.parse_args(argv)
    if not args.experiment:
        raise UsageError("an experiment name is required")
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        sp = parser._subparsers._group_actions[0].choices[args.experiment]
        known = {a.dest for a in sp._actions} - {"help", "config"}
        unknown = set(config) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        sp.set_defaults(**config)
        args = parser.parse_args(argv)
    missing = [k for k in REQUIRED.get(args.experiment, ()) if getattr(args, k, None) is None]
    if missing:
        raise UsageError(f"missing required parameters: {', '.join('--' + m for m in missing)}")
    params = {k: v for k, v in vars(args).items() if v is not None and k not in ("config", "out", "format", "experiment")}
    return args, params


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args, params = _resolve(parser, argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"largersieve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        outcome = REGISTRY[args.experiment](params)
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvariantViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (DomainError, ValueError) as exc:
        print(f"largersieve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    summary = {
        "experiment": args.experiment,
        "params": params,
        "results": outcome.results,
        "invariant_failures": outcome.failures,
        "wall_time_ms": round(1000 * (time.perf_counter() - t0), 3),
    }
    for path in write_outputs(args.out, args.experiment, outcome.rows, outcome.columns, summary, args.format):
        print(path)
    for row in outcome.rows[:40]:
        print(", ".join(f"{c}={row.get(c, '')}" for c in outcome.columns))
    if outcome.failures:
        for f in outcome.failures:
            print(f"invariant violation: {f}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
