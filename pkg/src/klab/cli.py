"""argparse front end for the ``klab`` executable.

Seven subcommands, one shared flag set::

    klab verify-lemma1  --p 101 --H 1..100 --ell all
    klab verify-identity --p 997 --H dyadic
    klab verify-mvt     --p 997 --H 4..64 --J 8
    klab verify-weil    --p 10007 --H dyadic --ell sample:5
    klab solve          --p 10007 --H 250 --K 250
    klab scan-hooley    --p 10007 --H 32 --ell 1
    klab bench          --p 1000003 --H 1000

Exit codes: 0 every check passed, 1 usage error (nothing written),
2 at least one falsification row in the output.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .harness import (
    COMMANDS,
    GENERATOR_MODES,
    ExperimentConfig,
    UsageError,
    run,
)

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """Route argparse's own failures through UsageError so that bad
    flags exit 1, not argparse's default 2 (reserved for falsification)."""

    def error(self, message: str):
        raise UsageError(message)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--p", type=int, nargs="+", required=True, metavar="P",
        help="prime modulus (repeatable: --p 101 997)",
    )
    sub.add_argument(
        "--H", nargs="+", metavar="TOK",
        help="window/interval lengths: int, a..b range, or 'dyadic'",
    )
    sub.add_argument(
        "--K", nargs="+", metavar="TOK",
        help="second-interval lengths (solve only): same token grammar",
    )
    sub.add_argument(
        "--ell", default="sample:10", metavar="POLICY",
        help="twist policy: 'all', 'sample:<n>', or a fixed integer "
             "(default sample:10)",
    )
    sub.add_argument(
        "--J", type=int, default=None,
        help="family size; default: capacity (p-1)//H for verify-mvt, "
             "solubility threshold capped at capacity for solve",
    )
    sub.add_argument(
        "--c", type=float, default=1.0,
        help="constant in the solubility threshold (default 1.0)",
    )
    sub.add_argument("--seed", type=int, default=1, help="master seed (default 1)")
    sub.add_argument(
        "--mode", choices=GENERATOR_MODES, default="random-disjoint",
        help="interval-family placement strategy",
    )
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write output here instead of stdout")
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     dest="fmt", help="output format (default csv)")
    sub.add_argument("--workers", type=int, default=1,
                     help="thread pool size for independent cells (default 1)")
    sub.add_argument(
        "--deterministic", action="store_true",
        help="pin timing fields to 0 and drop the CSV timestamp line, "
             "making output byte-identical across runs",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="klab",
        description="Numerical experiments on modular-inverse exponential "
                    "sums: bound verification sweeps and interval solvers.",
    )
    parser.add_argument("--version", action="version", version=f"klab {__version__}")
    subs = parser.add_subparsers(dest="command", metavar="COMMAND")
    descriptions = {
        "verify-lemma1": "check the short-window mean-square bound over a sweep",
        "verify-identity": "check the exact spectral identity for window mean squares",
        "verify-mvt": "check the mean-value bound over random disjoint families",
        "verify-weil": "check complete and incomplete sum magnitude bounds",
        "solve": "find x*y = 1 (mod p) witnesses over families of interval pairs",
        "scan-hooley": "scan every window start and report the extremal sum",
        "bench": "time the all-windows scan at scale",
    }
    for name in COMMANDS:
        sub = subs.add_parser(name, help=descriptions[name], description=descriptions[name])
        _add_common(sub)
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.H is not None:
        h_tokens = tuple(args.H)
    elif args.command == "solve":
        h_tokens = ()  # solve's default regime is resolved in the harness
    else:
        h_tokens = ("dyadic",)
    return ExperimentConfig(
        command=args.command,
        p_list=tuple(args.p),
        h_tokens=h_tokens,
        k_tokens=tuple(args.K) if args.K is not None else (),
        ell_policy=args.ell,
        J=args.J,
        c=args.c,
        seed=args.seed,
        mode=args.mode,
        out=args.out,
        fmt=args.fmt,
        workers=args.workers,
        deterministic=args.deterministic,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required (see klab --help)")
        return run(_config_from_args(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
