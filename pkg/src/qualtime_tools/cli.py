"""Command line interface.

Results go to stdout (`SAT`, `UNSAT`, `COUNT <m>`, `WIDTH-OK`, `WIDTH-FAIL`),
logs and errors go to stderr. Exit codes: 0 satisfiable, 1 unsatisfiable,
2 input error, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import logging
import sys
import typing as t
from pathlib import Path

from .__about__ import __version__
from .adapters import get_backend
from .api import problem_of
from .bench import parse_n_range, run_bench, write_csv
from .csp import CSPInstance, params
from .defaults import DEFAULT_BENCH_JOBS, OverlapBound
from .errors import (
    EmptyConstraint,
    InvalidInstanceError,
    ParseError,
    SizeLimitExceeded,
    VerificationMismatch,
)
from .formats import assignment_lines, parse, scenario_lines, serialize
from .generators import generate
from .interval import OrderedPartition
from .order import AtomicScenario, PartialOrder
from .types import Problem
from .width import effective_width_at_most

logger = logging.getLogger(__name__)

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_INPUT_ERROR = 2
EXIT_MISMATCH = 3


class InputError(Exception):
    """Input rejected by the command line before any solving happens."""


def _problem(value: str) -> Problem:
    return Problem(value)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log INFO messages, or DEBUG messages when repeated",
    )
    common.add_argument(
        "--at-most-k",
        action="store_true",
        default=False,
        help="Bound overlaps by 'at most k' instead of 'fewer than k'",
    )
    return common


def _solving(common: argparse.ArgumentParser) -> argparse.ArgumentParser:
    solving = argparse.ArgumentParser(add_help=False, parents=[common])
    solving.add_argument("file", type=Path, help="Instance file")
    solving.add_argument("--k", type=int, default=1, help="Structural parameter (default: 1)")
    solving.add_argument(
        "--problem",
        type=_problem,
        choices=list(Problem),
        metavar="{pot,ia,csp}",
        default=None,
        help="Expected problem family, checked against the file header",
    )
    solving.add_argument(
        "--witness", action="store_true", default=False, help="Print a solution after SAT"
    )
    return solving


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    solving = _solving(common)
    parser = argparse.ArgumentParser(
        prog="qualtime",
        description="Solvers for Partially Ordered Time, bounded-overlap interval algebra and finite-domain CSP.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("solve", parents=[solving], help="Decide an instance")
    commands.add_parser("count", parents=[solving], help="Count the solutions of an instance")
    oracle = commands.add_parser(
        "oracle", parents=[solving], help="Decide or count an instance by brute force"
    )
    oracle.add_argument(
        "--count", action="store_true", default=False, help="Print COUNT instead of SAT/UNSAT"
    )

    width = commands.add_parser(
        "width", parents=[common], help="Check the effective width of a partial order"
    )
    width.add_argument("file", type=Path, help="Poset file")
    width.add_argument("--k", type=int, required=True, help="Effective width to check")

    params_parser = commands.add_parser(
        "params", parents=[common], help="Print the parameters of a CSP instance"
    )
    params_parser.add_argument("file", type=Path, help="CSP instance file")

    gen = commands.add_parser("gen", parents=[common], help="Write a seeded random instance")
    gen.add_argument(
        "--problem",
        type=_problem,
        choices=list(Problem),
        metavar="{pot,ia,csp}",
        required=True,
    )
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--unsat-mix",
        action="store_true",
        default=False,
        help="Replace one constraint by a set excluding the planted relation",
    )
    gen.add_argument("-o", "--output", type=Path, default=None, help="Output file (default: stdout)")

    bench = commands.add_parser("bench", parents=[common], help="Run a benchmark and write CSV")
    bench.add_argument(
        "--problem",
        type=_problem,
        choices=list(Problem),
        metavar="{pot,ia,csp}",
        required=True,
    )
    bench.add_argument("--n-range", type=parse_n_range, required=True, help="Sizes as A..B")
    bench.add_argument("--k", type=int, default=1)
    bench.add_argument("--seeds", type=int, default=1, help="Seeds 0..S-1 for each size")
    bench.add_argument(
        "--verify", action="store_true", default=False, help="Cross-check with the oracle"
    )
    bench.add_argument("--output", type=Path, default=None, help="CSV file (default: stdout)")
    bench.add_argument("--jobs", type=int, default=DEFAULT_BENCH_JOBS)
    bench.add_argument(
        "--decide-only", action="store_true", default=False, help="Skip counting"
    )
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _bound(args: argparse.Namespace) -> OverlapBound:
    return OverlapBound.AT_MOST_K if args.at_most_k else OverlapBound.FEWER_THAN_K


def _kind(instance: t.Any) -> Problem:
    try:
        return problem_of(instance)
    except TypeError:
        raise InputError("Expected a pot, ia or csp instance, got a poset")


def _witness_lines(solution: t.Any) -> t.List[str]:
    if isinstance(solution, AtomicScenario):
        return scenario_lines(solution)
    if isinstance(solution, OrderedPartition):
        return solution.lines()
    return assignment_lines(solution)


def _solve(args: argparse.Namespace, out: t.TextIO) -> int:
    counting = args.command == "count" or (args.command == "oracle" and args.count)
    try:
        instance = parse(args.file)
        problem = _kind(instance)
    except EmptyConstraint as exc:
        logger.info("%s, reporting UNSAT", exc)
        instance = exc.instance
        problem = _kind(instance)
        if args.problem is not None and args.problem is not problem:
            raise InputError(f"File holds a {problem.value} instance, not {args.problem.value}")
        print("COUNT 0" if counting else "UNSAT", file=out)
        return EXIT_UNSAT
    if args.problem is not None and args.problem is not problem:
        raise InputError(f"File holds a {problem.value} instance, not {args.problem.value}")
    if args.k < 1:
        raise InputError(f"--k must be at least 1, got {args.k}")
    backend = get_backend(problem, oracle=args.command == "oracle", bound=_bound(args))
    if counting:
        count = backend.count(instance, args.k)
        print(f"COUNT {count}", file=out)
        satisfiable = count > 0
    else:
        satisfiable = backend.decide(instance, args.k)
        print("SAT" if satisfiable else "UNSAT", file=out)
    if satisfiable and args.witness:
        for line in _witness_lines(backend.witness(instance, args.k)):
            print(line, file=out)
    return EXIT_SAT if satisfiable else EXIT_UNSAT


def _width(args: argparse.Namespace, out: t.TextIO) -> int:
    order = parse(args.file)
    if not isinstance(order, PartialOrder):
        raise InputError("The width command expects a poset file")
    if args.k < 1:
        raise InputError(f"--k must be at least 1, got {args.k}")
    ok = effective_width_at_most(order, args.k)
    print("WIDTH-OK" if ok else "WIDTH-FAIL", file=out)
    return EXIT_SAT if ok else EXIT_UNSAT


def _params(args: argparse.Namespace, out: t.TextIO) -> int:
    instance = parse(args.file)
    if not isinstance(instance, CSPInstance):
        raise InputError("The params command expects a csp file")
    for name, value in params(instance)._asdict().items():
        print(f"{name} {value}", file=out)
    return EXIT_SAT


def _gen(args: argparse.Namespace, out: t.TextIO) -> int:
    instance = generate(args.problem, args.n, args.k, args.seed, args.unsat_mix, _bound(args))
    text = serialize(instance)
    if args.output is None:
        out.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    return EXIT_SAT


def _bench(args: argparse.Namespace, out: t.TextIO) -> int:
    if args.k < 1 or args.seeds < 0 or args.jobs < 1:
        raise InputError("--k and --jobs must be at least 1, --seeds non-negative")
    records = run_bench(
        args.problem,
        args.n_range,
        args.k,
        args.seeds,
        verify=args.verify,
        jobs=args.jobs,
        decide_only=args.decide_only,
        bound=_bound(args),
    )
    if args.output is None:
        write_csv(records, out)
    else:
        with args.output.open("w", encoding="utf-8", newline="") as stream:
            write_csv(records, stream)
    return EXIT_SAT


COMMANDS: t.Dict[str, t.Callable[[argparse.Namespace, t.TextIO], int]] = {
    "solve": _solve,
    "count": _solve,
    "oracle": _solve,
    "width": _width,
    "params": _params,
    "gen": _gen,
    "bench": _bench,
}


def run(argv: t.Sequence[str] | None = None, out: t.TextIO | None = None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args, out)
    except VerificationMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (
        InputError,
        ParseError,
        EmptyConstraint,
        InvalidInstanceError,
        SizeLimitExceeded,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    sys.exit(run())
