"""
Command line of troplin.

Subcommands::

    troplin validate MATRIX           check that a matrix is normal idempotent
    troplin gen --n N                 seeded random NI matrix
    troplin line MATRIX --cols I J    the tropical line through columns I and J
    troplin segment MATRIX --cols I J the tropical segment between columns I and J
    troplin closure MATRIX            idempotent closure of a normal matrix
    troplin sweep --n N [N ...]       build and verify lines of random NI matrices

MATRIX is a JSON or whitespace-separated text file, ``-`` reads standard input. Exit status
is 0 on success, 1 when the input is valid but the answer is negative (not NI, degenerate
columns, a failed verification) and 2 on usage or parse errors.
"""

import argparse
import logging
import sys

from .backend.documents import (
    DocumentError,
    dumps,
    matrix_document,
    read_matrix,
    report_document,
    segment_document,
    tree_document,
    violations_document,
)
from .backend.newick import to_newick
from .core.builder import trace_line
from .core.maxplus import ConsistencyError, as_scalar, tconv
from .core.nimatrix import (
    CompletionError,
    check_ni,
    closure,
    complete_two_columns,
    random_ni,
    validate_ni,
)
from .core.oracle import run_sweep, verify_tree
from .utils.config import FORMATS, ConfigError, read_config

STREAM_NOTE = (
    "Random stream version 1: numpy.random.default_rng(seed) (PCG64), one "
    "integers(lo, hi, size=(n, n), endpoint=True) draw per attempt, diagonal set to 0, "
    "entries divided by the denominator. The default seed is $TROPLIN_SEED, else 0."
)


class UsageError(ValueError):
    """Indicate arguments that are well formed but cannot be used together."""

    pass


def scalar(text):
    """Exact number from the command line; argparse reports the ValueError."""
    return as_scalar(text)


def _columns(args, cfg, n):
    i, j = args.cols if args.cols is not None else cfg["line"]["cols"]
    if not 1 <= i < j <= n:
        raise UsageError(f"--cols needs 1 <= i < j <= {n}, got {i} {j}")
    return i, j


def cmd_validate(args, cfg) -> int:
    A = read_matrix(args.input)
    report = check_ni(A)
    print(dumps(violations_document(report)))
    if not report.ok:
        logging.error("%s is not normal idempotent: %s", args.input, report.first)
        return 1
    return 0


def cmd_gen(args, cfg) -> int:
    gen = cfg["gen"]
    low = args.low if args.low is not None else as_scalar(gen["low"])
    high = args.high if args.high is not None else as_scalar(gen["high"])
    seed = args.seed if args.seed is not None else gen["seed"]
    denominator = args.denominator if args.denominator is not None else gen["denominator"]
    retries = args.retries if args.retries is not None else gen["retries"]
    if not low <= high <= 0:
        raise UsageError(f"need --low <= --high <= 0, got {low} and {high}")
    if denominator < 1 or retries < 1:
        raise UsageError("--denominator and --retries must be positive")

    if args.fix_cols is None:
        if args.n is None:
            raise UsageError("give --n or --fix-cols")
        A = random_ni(args.n, low, high, seed=seed, denominator=denominator)
    else:
        columns = read_matrix(args.fix_cols, square=False)
        if columns.shape[1] != 2:
            raise UsageError(f"{args.fix_cols} must hold two columns, got {columns.shape[1]}")
        n = columns.shape[0]
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} does not match the {n} rows of {args.fix_cols}")
        i, j = _columns(args, cfg, n)
        A = complete_two_columns(
            list(columns[:, 0]),
            list(columns[:, 1]),
            i,
            j,
            low=low,
            high=high,
            seed=seed,
            denominator=denominator,
            retries=retries,
        )
    print(dumps(matrix_document(A)))
    return 0


def cmd_line(args, cfg) -> int:
    A = validate_ni(read_matrix(args.input))
    i, j = _columns(args, cfg, A.n)
    output_format = args.format or cfg["line"]["format"]
    verify = args.verify or cfg["line"]["verify"]

    tree, stages = trace_line(A, i, j)
    report = verify_tree(A, i, j, tree) if verify else None
    if output_format == "newick":
        print(to_newick(tree))
    else:
        document = tree_document(tree, stages if args.stages else None)
        if report is not None:
            document["verification"] = report_document(report)
        print(dumps(document))

    if report is not None and not report.overall:
        logging.error("verification failed: %s", ", ".join(c.name for c in report.failed))
        return 1
    return 0


def cmd_segment(args, cfg) -> int:
    A = validate_ni(read_matrix(args.input))
    i, j = _columns(args, cfg, A.n)
    print(dumps(segment_document(tconv(A.column(i), A.column(j)))))
    return 0


def cmd_closure(args, cfg) -> int:
    print(dumps(matrix_document(closure(read_matrix(args.input)))))
    return 0


def cmd_sweep(args, cfg) -> int:
    gen = cfg["gen"]
    seed = args.seed if args.seed is not None else gen["seed"]
    low, high = as_scalar(gen["low"]), as_scalar(gen["high"])
    summaries = [run_sweep(n, args.count, seed=seed, low=low, high=high) for n in args.n]
    print(dumps([summary.as_dict() for summary in summaries]))
    failed = [summary for summary in summaries if not summary.ok]
    for summary in failed:
        logging.error("n=%d: %d instances failed", summary.n, len(summary.failures))
    return 1 if failed else 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troplin",
        description="Tropical lines through two columns of a normal idempotent matrix.",
    )
    parser.add_argument("--config", metavar="FILE", help="INI configuration file")
    loudness = parser.add_mutually_exclusive_group()
    loudness.add_argument("-v", "--verbose", action="store_true", help="log every stage")
    loudness.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def with_input(name, func, help_text):
        sub = commands.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("input", metavar="MATRIX", help="matrix file, - for stdin")
        sub.set_defaults(func=func)
        return sub

    def with_cols(sub):
        sub.add_argument(
            "--cols", nargs=2, type=int, metavar=("I", "J"), help="column labels, I < J"
        )

    with_input("validate", cmd_validate, "Check that a matrix is normal idempotent.")

    line = with_input("line", cmd_line, "Tropical line through two columns, as a tree.")
    with_cols(line)
    line.add_argument("--format", choices=FORMATS, help="output format (default json)")
    line.add_argument("--verify", action="store_true", help="run the oracle checks")
    line.add_argument("--stages", action="store_true", help="include the intermediate lines")

    segment = with_input("segment", cmd_segment, "Tropical segment between two columns.")
    with_cols(segment)

    with_input("closure", cmd_closure, "Idempotent closure of a normal matrix.")

    gen = commands.add_parser(
        "gen", help="Seeded random NI matrix.", description="Seeded random NI matrix.",
        epilog=STREAM_NOTE,
    )
    gen.add_argument("--n", type=int, help="order of the matrix")
    gen.add_argument("--low", type=scalar, help="lower bound of the entries (default -20)")
    gen.add_argument("--high", type=scalar, help="upper bound of the entries (default -10)")
    gen.add_argument("--seed", type=int, help="seed of the random stream")
    gen.add_argument("--denominator", type=int, help="entries are multiples of 1/D")
    gen.add_argument("--retries", type=int, help="draws tried by --fix-cols")
    gen.add_argument(
        "--fix-cols", metavar="FILE", help="n x 2 matrix file with the columns to keep"
    )
    with_cols(gen)
    gen.set_defaults(func=cmd_gen)

    sweep = commands.add_parser(
        "sweep", help="Build and verify lines of random NI matrices.", epilog=STREAM_NOTE
    )
    sweep.add_argument("--n", type=int, nargs="+", required=True, help="orders, each >= 3")
    sweep.add_argument("--count", type=int, default=100, help="instances per order")
    sweep.add_argument("--seed", type=int, help="instance k uses seed + k")
    sweep.set_defaults(func=cmd_sweep)
    return parser


def _level(args, cfg) -> str:
    if args.verbose:
        return "DEBUG"
    if args.quiet:
        return "ERROR"
    return cfg["logging"]["level"]


def main(argv=None) -> int:
    """
    Run the command line.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name; ``sys.argv[1:]`` by default.

    Returns
    ----------
    int
        Exit status: 0 success, 1 negative answer or failed check, 2 usage or parse error.
    """
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else 2

    try:
        cfg = read_config(args.config)
    except ConfigError as error:
        logging.basicConfig(format="%(levelname)s: %(message)s")
        logging.error("%s", error)
        return 2
    logging.basicConfig(level=_level(args, cfg), format="%(levelname)s: %(message)s")

    try:
        return args.func(args, cfg)
    except (DocumentError, UsageError) as error:
        logging.error("%s", error)
        return 2
    except (ValueError, CompletionError, ConsistencyError) as error:
        logging.error("%s", error)
        return 1


if __name__ == "__main__":
    sys.exit(main())
