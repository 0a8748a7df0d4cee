import csv
import functools
import math
import os
import sys
import tempfile
from contextlib import suppress
from typing import IO, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from spincorr import functions
from spincorr.closedform import analytic_moments
from spincorr.coherent import BlochAngles
from spincorr.correlation import correlation_triple_from_moments
from spincorr.dicke import SpinMoments, all_moments
from spincorr.dynamics import EvolutionSpec, evolved_coherent
from spincorr.util.constants import CSV_FLOAT_DECIMALS, MAX_N_ATOMS
from spincorr.util.loggertools import get_logger
from spincorr.util.validationtools import (
    validate_choice,
    validate_concurrency,
    validate_finite,
    validate_m,
    validate_n_atoms,
    validate_non_empty,
    validate_range,
    validate_tau,
    validate_theta,
    validate_via,
)

MODES = ("table", "sweep-n", "sweep-theta", "sweep-tau", "point")

# exact: matrix path; analytic: closed forms; literal: closed forms with principal-value phases
ROUTES = ("exact", "analytic", "literal")

CSV_HEADER = ("n", "theta", "phi", "tau", "m", "cx", "cy", "cz", "s", "degenerate")


class SweepPoint(NamedTuple):
    n_atoms: int
    theta: float
    phi: float
    tau: float
    m: Optional[int] = None


class SweepRecord(NamedTuple):
    n: int
    theta: float
    phi: float
    tau: float
    m: Optional[int]
    cx: float
    cy: float
    cz: float
    s: float
    degenerate: bool


class SweepSpec(NamedTuple):
    mode: str
    n_atoms: Tuple[int, ...]
    thetas: Tuple[float, ...]
    phi: float
    taus: Tuple[float, ...] = ()
    m_list: Tuple[int, ...] = ()
    route: str = "exact"
    threads: int = 1
    via: str = "thread"
    allow_polar: bool = False


class SweepSummary(NamedTuple):
    rows: int
    degenerate_rows: int


def expand_range(start: float, stop: float, step: float) -> Tuple[float, ...]:
    """
    start, start + step, ... up to `stop` included, each value computed from its index.
    """
    validate_range("range", start, stop, step)
    count = math.floor((stop - start) / step + 1e-9) + 1
    return tuple(min(start + index * step, stop) for index in range(count))


def default_spec(mode: str) -> SweepSpec:
    validate_choice("mode", mode, MODES)
    if mode == "table":
        return SweepSpec(
            mode, (10,), (math.pi / 4,), 0.0, m_list=tuple(range(2, 11))
        )
    if mode == "sweep-n":
        return SweepSpec(
            mode,
            tuple(range(2, 11)),
            (math.pi / 4,),
            0.0,
            taus=(math.pi / 8, math.pi / 6, math.pi / 4),
        )
    if mode == "sweep-theta":
        return SweepSpec(
            mode,
            (5, 6),
            expand_range(math.pi / 314, math.pi, math.pi / 314),
            0.0,
            taus=(math.pi / 3,),
        )
    if mode == "sweep-tau":
        return SweepSpec(
            mode, (10,), (math.pi / 4,), 0.0, taus=expand_range(0.0, 7.0, 0.01)
        )
    return SweepSpec(mode, (10,), (math.pi / 4,), 0.0, taus=(math.pi / 6,))


def validate_sweep_spec(spec: SweepSpec) -> None:
    validate_choice("mode", spec.mode, MODES)
    validate_choice("route", spec.route, ROUTES)
    validate_concurrency(spec.threads)
    validate_via(spec.via)
    validate_finite("phi", spec.phi)
    validate_non_empty("n_atoms", spec.n_atoms)
    validate_non_empty("thetas", spec.thetas)
    for n_atoms in spec.n_atoms:
        validate_n_atoms(n_atoms)
        if spec.mode == "sweep-n" and n_atoms < 2:
            raise ValueError(
                f"`n_atoms` must be in [2, {MAX_N_ATOMS}] but got {n_atoms}"
            )
    for theta in spec.thetas:
        validate_theta(theta)
        if spec.mode == "sweep-theta" and theta == 0 and not spec.allow_polar:
            raise ValueError(
                "`theta` must be in (0, pi] but got 0.0 (allow the pole explicitly to include it)"
            )
    if spec.mode == "table":
        validate_non_empty("m_list", spec.m_list)
        for m in spec.m_list:
            validate_m(m)
    else:
        validate_non_empty("taus", spec.taus)
        for tau in spec.taus:
            validate_tau(tau)


def sweep_points(spec: SweepSpec) -> Iterator[SweepPoint]:
    """
    Points of the sweep in output order.
    """
    phi = spec.phi
    if spec.mode == "table":
        for n_atoms in spec.n_atoms:
            for theta in spec.thetas:
                for m in spec.m_list:
                    yield SweepPoint(n_atoms, theta, phi, math.pi / m, m)
    elif spec.mode == "sweep-n":
        for tau in spec.taus:
            for n_atoms in spec.n_atoms:
                for theta in spec.thetas:
                    yield SweepPoint(n_atoms, theta, phi, tau)
    elif spec.mode == "sweep-theta":
        for n_atoms in spec.n_atoms:
            for tau in spec.taus:
                for theta in spec.thetas:
                    yield SweepPoint(n_atoms, theta, phi, tau)
    else:
        for n_atoms in spec.n_atoms:
            for theta in spec.thetas:
                for tau in spec.taus:
                    yield SweepPoint(n_atoms, theta, phi, tau)


def point_moments(point: SweepPoint, route: str = "exact") -> SpinMoments:
    if route == "exact":
        spec = EvolutionSpec(point.n_atoms, BlochAngles.of(point.theta, point.phi), point.tau)
        return all_moments(evolved_coherent(spec))
    branch = "atan2" if route == "analytic" else "principal"
    return analytic_moments(
        point.n_atoms, point.theta, point.phi, point.tau, branch
    ).to_spin_moments()


def evaluate_point(point: SweepPoint, route: str = "exact") -> SweepRecord:
    """
    Correlation terms of the evolved coherent state at `point`.

    Args:
        point (SweepPoint): Parameters of the evolved coherent state.
        route (str, optional): Where the moments come from, one of `ROUTES` (default: "exact").
            The "literal" route may produce negative variances, which are kept as is.

    Returns:
        SweepRecord: One output row.
    """
    validate_choice("route", route, ROUTES)
    triple = correlation_triple_from_moments(
        point_moments(point, route), clamp=route != "literal"
    )
    if triple.degenerate:
        get_logger().warning(
            "degenerate mean-spin frame at n=%s theta=%r phi=%r tau=%r: values are lab-frame",
            point.n_atoms,
            point.theta,
            point.phi,
            point.tau,
        )
    return SweepRecord(
        n=point.n_atoms,
        theta=point.theta,
        phi=point.phi,
        tau=point.tau,
        m=point.m,
        cx=triple.cx,
        cy=triple.cy,
        cz=triple.cz,
        s=triple.s,
        degenerate=triple.degenerate,
    )


def run_sweep(spec: SweepSpec) -> Iterator[SweepRecord]:
    """
    Lazily evaluates the sweep's points on `spec.threads` workers, yielding records in point order.
    """
    validate_sweep_spec(spec)
    records = functions.map(
        # partial of a module-level function stays picklable for process workers
        functools.partial(evaluate_point, route=spec.route),
        sweep_points(spec),
        concurrency=spec.threads,
        via=spec.via,
    )
    return functions.observe(
        records, what="rows", is_flagged=lambda record: record.degenerate
    )


def _format_float(value: float) -> str:
    text = f"{value:.{CSV_FLOAT_DECIMALS}f}"
    # tiny negatives print as "-0.000000"
    if text.startswith("-") and float(text) == 0:
        return text[1:]
    return text


def format_record(record: SweepRecord) -> List[str]:
    return [
        str(record.n),
        _format_float(record.theta),
        _format_float(record.phi),
        _format_float(record.tau),
        "" if record.m is None else str(record.m),
        _format_float(record.cx),
        _format_float(record.cy),
        _format_float(record.cz),
        _format_float(record.s),
        "1" if record.degenerate else "0",
    ]


def write_csv(records: Iterable[SweepRecord], stream: IO[str]) -> SweepSummary:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    rows = degenerate_rows = 0
    for record in records:
        writer.writerow(format_record(record))
        rows += 1
        degenerate_rows += record.degenerate
    return SweepSummary(rows, degenerate_rows)


def write_sweep(
    records: Iterable[SweepRecord], out: Optional[str] = None
) -> SweepSummary:
    """
    Writes the CSV to standard output, or to `out` through a temporary file renamed once complete.
    """
    if out is None:
        return write_csv(records, sys.stdout)
    directory = os.path.dirname(os.path.abspath(out))
    temporary = tempfile.NamedTemporaryFile(
        "w", dir=directory, prefix=".spincorr-", suffix=".csv", newline="", delete=False
    )
    try:
        with temporary:
            summary = write_csv(records, temporary)
        os.replace(temporary.name, out)
    except BaseException:
        with suppress(FileNotFoundError):
            os.unlink(temporary.name)
        raise
    get_logger().info("%s rows written to %s", summary.rows, out)
    return summary
