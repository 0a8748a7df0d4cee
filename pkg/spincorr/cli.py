import argparse
import logging
import math
import re
from typing import Optional, Sequence, Tuple

from spincorr.sweep import (
    MODES,
    ROUTES,
    SweepSpec,
    default_spec,
    expand_range,
    run_sweep,
    validate_sweep_spec,
    write_sweep,
)
from spincorr.util.loggertools import get_logger, set_log_level

EXIT_OK = 0
# argparse exits with 2 on usage errors
EXIT_DEGENERATE = 3

_PI_LITERAL = re.compile(
    r"^(?P<coefficient>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi"
    r"(?:\s*/\s*(?P<divisor>\d+(?:\.\d*)?|\.\d+))?$"
)


def parse_angle(text: str) -> float:
    """
    Radians, or a multiple of pi such as `pi`, `pi/4`, `3pi/4`, `3*pi/4`, `-pi/2`.
    """
    literal = text.strip().lower()
    match = _PI_LITERAL.match(literal)
    if match:
        coefficient = match.group("coefficient")
        factor = (
            -1.0
            if coefficient == "-"
            else 1.0 if coefficient in ("", "+") else float(coefficient)
        )
        divisor = float(match.group("divisor") or 1)
        if divisor == 0:
            raise argparse.ArgumentTypeError(f"invalid angle {text!r}: division by zero")
        return factor * math.pi / divisor
    try:
        return float(literal)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid angle {text!r}: expected radians or a pi literal such as pi/4"
        )


def parse_angle_list(text: str) -> Tuple[float, ...]:
    return tuple(parse_angle(item) for item in text.split(","))


def parse_int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid integer list {text!r}: expected e.g. 2,3,4"
        )


def parse_n_range(text: str) -> Tuple[int, ...]:
    try:
        start, stop = (int(bound) for bound in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid range {text!r}: expected A:B with integers"
        )
    if stop < start:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}: empty")
    return tuple(range(start, stop + 1))


def parse_angle_range(text: str) -> Tuple[float, ...]:
    bounds = text.split(":")
    if len(bounds) != 3:
        raise argparse.ArgumentTypeError(
            f"invalid range {text!r}: expected A:B:STEP"
        )
    start, stop, step = (parse_angle(bound) for bound in bounds)
    try:
        return expand_range(start, stop, step)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}: {e}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    atoms = common.add_mutually_exclusive_group()
    atoms.add_argument("--n", type=parse_int_list, help="number(s) of atoms, e.g. 10 or 5,6")
    atoms.add_argument("--n-range", type=parse_n_range, metavar="A:B", help="inclusive range of atom numbers")
    thetas = common.add_mutually_exclusive_group()
    thetas.add_argument("--theta", type=parse_angle_list, help="polar angle(s), e.g. pi/4")
    thetas.add_argument("--theta-range", type=parse_angle_range, metavar="A:B:STEP")
    common.add_argument("--phi", type=parse_angle, help="azimuth (default: 0)")
    taus = common.add_mutually_exclusive_group()
    taus.add_argument("--tau", type=parse_angle_list, help="interaction time(s), e.g. pi/6")
    taus.add_argument("--tau-range", type=parse_angle_range, metavar="A:B:STEP")
    common.add_argument("--m-list", type=parse_int_list, metavar="2,3,...", help="table mode: tau = pi/m")
    common.add_argument("--out", metavar="PATH", help="CSV destination (default: standard output)")
    common.add_argument("--threads", type=int, default=1, metavar="K", help="number of workers")
    common.add_argument("--via", choices=("thread", "process"), default="thread")
    common.add_argument("--moments", choices=ROUTES, default="exact", help="source of the spin moments")
    common.add_argument("--allow-polar", action="store_true", help="sweep-theta: accept theta = 0")
    common.add_argument("--strict", action="store_true", help="exit 3 if a degenerate frame is met")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true")
    verbosity.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="spincorr",
        description="Net pairwise quantum correlation S of N two-level atoms evolved from a coherent state.",
    )
    subparsers = parser.add_subparsers(dest="mode", metavar="|".join(MODES))
    subparsers.required = True
    for mode in MODES:
        subparsers.add_parser(mode, parents=[common])
    return parser


def build_spec(args: argparse.Namespace) -> SweepSpec:
    spec = default_spec(args.mode)
    overrides = {
        "n_atoms": args.n or args.n_range,
        "thetas": args.theta or args.theta_range,
        "phi": args.phi,
        "taus": args.tau or args.tau_range,
        "m_list": args.m_list,
    }
    return spec._replace(
        **{field: value for field, value in overrides.items() if value is not None},
        route=args.moments,
        threads=args.threads,
        via=args.via,
        allow_polar=args.allow_polar,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.quiet:
        set_log_level(logging.WARNING)
    elif args.verbose:
        set_log_level(logging.DEBUG)
    else:
        set_log_level(logging.INFO)

    if args.mode == "table" and (args.tau is not None or args.tau_range is not None):
        parser.error("table mode takes its interaction times from --m-list (tau = pi/m), not --tau")
    if args.mode != "table" and args.m_list is not None:
        parser.error(f"--m-list is only used in table mode, not in {args.mode}")

    spec = build_spec(args)
    try:
        validate_sweep_spec(spec)
    except (TypeError, ValueError) as e:
        parser.error(str(e))

    summary = write_sweep(run_sweep(spec), args.out)
    if summary.degenerate_rows and args.strict:
        get_logger().error(
            "%s of %s rows have a degenerate mean-spin frame",
            summary.degenerate_rows,
            summary.rows,
        )
        return EXIT_DEGENERATE
    return EXIT_OK
