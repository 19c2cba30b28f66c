"""Command-line interface.

Exit codes: 0 ok, 1 table check mismatch, 2 parse/input error, 3 invalid
system or summary, 4 infeasible summary or non-constructible decomposition.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import construction, lp_bounds, rng, tables
from .exceptions import ConstructionError, FormatError, InfeasibleSummaryError, InvalidSummaryError, InvalidSystemError
from .report import RENDERERS, compute_report
from .serialization import (
    decomposition_from_dict,
    dumps,
    load_input,
    read_json,
    system_to_dict,
)
from .simplex import FEAS_TOL
from .system import FiniteProbabilitySystem, moment_summary

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_INFEASIBLE = 4

TOL_ENV = "UNIONBOUNDS_TOL"


def resolve_tol(flag):
    """``--tol`` wins, then ``$UNIONBOUNDS_TOL``, then the solver default."""
    if flag is not None:
        return flag
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise FormatError(f"{TOL_ENV}={env!r} is not a number") from exc
    return FEAS_TOL


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def cmd_bounds(args):
    source = load_input(args.path)
    report = compute_report(source, args.id or Path(args.path).stem, tol=resolve_tol(args.tol))
    sys.stdout.write(RENDERERS[args.format]([report]))
    return EXIT_OK


def cmd_construct(args):
    if args.from_optimal:
        source = load_input(args.from_optimal)
        s = moment_summary(source) if isinstance(source, FiniteProbabilitySystem) else source.check()
        result = lp_bounds.optimal_lower_lp(s, tol=resolve_tol(args.tol))
        if not result.optimal:
            raise InfeasibleSummaryError(result.message)
        decomposition = result.decomposition
    else:
        decomposition = decomposition_from_dict(read_json(args.path))
    witness = construction.construct_system(decomposition, prune_zero=args.prune_zero)
    text = dumps(system_to_dict(witness))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    report = construction.verify_realization(decomposition, witness)
    for line in report.lines():
        print(line, file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


def cmd_random(args):
    system = rng.random_system(args.seed, args.events, args.outcomes)
    sys.stdout.write(dumps(system_to_dict(system)))
    return EXIT_OK


def cmd_tables(args):
    directory = args.paper_systems_dir
    try:
        expected = tables.load_expected(directory)
        rows = tables.compute_rows(directory)
    except FileNotFoundError as exc:
        raise FormatError(str(exc)) from exc
    sys.stdout.write(tables.render(rows, expected))
    if args.check:
        bad = tables.mismatches(rows, expected)
        for name, col, got, want in bad:
            print(f"MISMATCH system {name} column {col}: got {got:.6f}, expected {want:.4f}", file=sys.stderr)
        if bad:
            return EXIT_MISMATCH
        print(f"check passed: all cells within {tables.TABLE_TOL}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unionbounds",
        description="Bounds on the probability of a finite union of events from partial information.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="compute all bounds for a system or summary JSON file")
    p.add_argument("path")
    p.add_argument("--format", choices=sorted(RENDERERS), default="table")
    p.add_argument("--tol", type=float, default=None, help=f"solver feasibility tolerance (env {TOL_ENV})")
    p.add_argument("--id", default=None, help="label for the system (default: file stem)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build a witness system for a degree decomposition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("path", nargs="?", help="decomposition JSON")
    src.add_argument("--from-optimal", metavar="PATH", help="system or summary JSON; use its optimal LP point")
    p.add_argument("-o", "--output", help="write witness JSON here instead of stdout")
    p.add_argument("--prune-zero", action="store_true", help="drop zero-probability outcomes")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("random", help="emit a deterministic random system")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--events", type=int, required=True)
    p.add_argument("--outcomes", type=int, required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("tables", help="reproduce the comparison tables for Systems V-VIII")
    p.add_argument("--paper-systems-dir", default=None, help="directory with system_*.json fixtures")
    p.add_argument("--check", action="store_true", help="exit nonzero if any cell is off by more than 5e-4")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        _err(exc)
        return EXIT_PARSE
    except (InvalidSystemError, InvalidSummaryError) as exc:
        _err(exc)
        return EXIT_INVALID
    except (InfeasibleSummaryError, ConstructionError) as exc:
        _err(exc)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        _err(exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
