import math
from typing import List, NamedTuple, Tuple

from spincorr.coherent import BlochAngles
from spincorr.dicke import SpinMoments, all_moments
from spincorr.dynamics import EvolutionSpec, evolved_coherent
from spincorr.util.loggertools import get_logger
from spincorr.util.validationtools import (
    validate_choice,
    validate_finite,
    validate_n_atoms,
    validate_tau,
    validate_theta,
)

BRANCHES = ("atan2", "principal")

MOMENT_FIELDS = ("jx", "jy", "jz", "jx2", "jy2", "jz2", "xy", "yz", "xz")


class AnalyticMoments(NamedTuple):
    """
    Moments of the evolved coherent state evaluated from closed forms, with the intermediate
    magnitudes `t1`, `t2` and phases `theta_cap1`, `theta_cap2`, `theta_cap3`.
    """

    n_atoms: int
    jx: float
    jy: float
    jz: float
    jx2: float
    jy2: float
    jz2: float
    xy: float
    yz: float
    xz: float
    t1: float
    t2: float
    theta_cap1: float
    theta_cap2: float
    theta_cap3: float

    def to_spin_moments(self) -> SpinMoments:
        return SpinMoments(
            self.n_atoms, *(getattr(self, field) for field in MOMENT_FIELDS)
        )


def _arctangent(numerator: float, denominator: float, branch: str) -> float:
    if branch == "atan2":
        return math.atan2(numerator, denominator)
    if denominator == 0:
        return math.copysign(math.pi / 2, numerator)
    return math.atan(numerator / denominator)


def _power(base: float, exponent: float) -> float:
    # rounding can push a vanishing magnitude slightly below 0
    base = max(base, 0.0)
    if base == 0.0:
        if exponent == 0:
            return 1.0
        return 0.0 if exponent > 0 else math.inf
    return base**exponent


def _validate(n: int, theta: float, phi: float, tau: float, branch: str) -> None:
    validate_n_atoms(n)
    validate_theta(theta)
    validate_finite("phi", phi)
    validate_tau(tau)
    validate_choice("branch", branch, BRANCHES)


def analytic_moments(
    n: int, theta: float, phi: float, tau: float, branch: str = "atan2"
) -> AnalyticMoments:
    """
    Evaluates the closed forms of the nine moments of the coherent state |theta, phi> of `n` atoms
    evolved for `tau`.

    Args:
        n (int): Number of atoms.
        theta (float): Initial polar angle.
        phi (float): Initial azimuth.
        tau (float): Interaction time.
        branch (str, optional): "atan2" evaluates the three phase angles with the two-argument arctangent,
            "principal" with the single-argument principal value of the ratio (default: "atan2").

    Returns:
        AnalyticMoments: The moments and the intermediate quantities.
    """
    _validate(n, theta, phi, tau, branch)
    j = n / 2
    sin_theta, cos_theta = math.sin(theta), math.cos(theta)
    sin2 = sin_theta**2
    s2 = math.sin(theta / 2) ** 2
    c2 = math.cos(theta / 2) ** 2

    # first moments
    t1 = s2**2 + sin2 * math.cos(2 * tau) / 2 + c2**2
    theta_cap1 = _arctangent(-math.sin(tau) * cos_theta, math.cos(tau), branch)
    power1 = _power(t1, j - 1)
    phase_a = 2 * j * theta_cap1 - phi
    phase_b = phase_a - 2 * tau
    jx = j * sin_theta * power1 * (c2 * math.cos(phase_a) + s2 * math.cos(phase_b))
    jy = -j * sin_theta * power1 * (c2 * math.sin(phase_a) + s2 * math.sin(phase_b))
    jz = -j * cos_theta

    # transverse second moments
    t2 = s2**2 + sin2 * math.cos(4 * tau) / 2 + c2**2
    theta_cap2 = _arctangent(
        c2 * math.sin(4 * tau), s2 + c2 * math.cos(4 * tau), branch
    )
    transverse_phase = (6 - 4 * j) * tau + 2 * phi + (2 * j - 2) * theta_cap2
    amplitude = j * (2 * j - 1) / 4 * sin2 * _power(t2, j - 1)
    jz2 = j * sin2 / 2 + j**2 * (s2**2 - sin2 / 2 + c2**2)
    base = j * (j + 1) / 2 - (
        j**2 * s2**2 - j**2 * sin2 / 2 + j * sin2 / 2 + j**2 * c2**2
    ) / 2
    jx2 = amplitude * math.cos(transverse_phase) + base
    jy2 = -amplitude * math.cos(transverse_phase) + base
    xy = 2 * amplitude * math.sin(transverse_phase)

    # longitudinal cross moments
    theta_cap3 = _arctangent(
        c2 * math.sin(2 * tau), s2 + c2 * math.cos(2 * tau), branch
    )
    cross_phase = (1 - j) * 2 * tau + phi + (2 * j - 2) * theta_cap3
    cross_amplitude = j * (2 * j - 1) * sin_theta * power1
    in_phase = s2 - c2 * math.cos(2 * tau)
    quadrature = c2 * math.sin(2 * tau)
    yz = cross_amplitude * (
        in_phase * math.sin(cross_phase) - quadrature * math.cos(cross_phase)
    )
    xz = cross_amplitude * (
        in_phase * math.cos(cross_phase) + quadrature * math.sin(cross_phase)
    )

    return AnalyticMoments(
        n_atoms=n,
        jx=jx,
        jy=jy,
        jz=jz,
        jx2=jx2,
        jy2=jy2,
        jz2=jz2,
        xy=xy,
        yz=yz,
        xz=xz,
        t1=t1,
        t2=t2,
        theta_cap1=theta_cap1,
        theta_cap2=theta_cap2,
        theta_cap3=theta_cap3,
    )


def analytic_first_moments(
    n: int, theta: float, phi: float, tau: float, branch: str = "atan2"
) -> Tuple[float, float, float]:
    moments = analytic_moments(n, theta, phi, tau, branch)
    return moments.jx, moments.jy, moments.jz


def analytic_second_moments(
    n: int, theta: float, phi: float, tau: float, branch: str = "atan2"
) -> Tuple[float, float, float, float, float, float]:
    moments = analytic_moments(n, theta, phi, tau, branch)
    return moments.jx2, moments.jy2, moments.jz2, moments.xy, moments.yz, moments.xz


def principal_branch_valid(n: int, theta: float, tau: float) -> bool:
    """
    Whether the principal-value phases give the same moments as the two-argument ones.
    They differ by pi exactly where an arctangent denominator is negative, and a shift of pi
    only survives multiplication by 2j or 2j - 2 when N is odd.
    """
    if n % 2 == 0:
        return True
    s2 = math.sin(theta / 2) ** 2
    c2 = math.cos(theta / 2) ** 2
    denominators = (
        math.cos(tau),
        s2 + c2 * math.cos(4 * tau),
        s2 + c2 * math.cos(2 * tau),
    )
    return all(denominator > 0 for denominator in denominators)


def compare_with_numeric(
    n: int,
    theta: float,
    phi: float,
    tau: float,
    branch: str = "atan2",
    rtol: float = 1e-8,
) -> List[str]:
    """
    Names of the moments whose closed form disagrees with the matrix path beyond `rtol`,
    relative to the moment scale j(j+1). Each disagreement is logged as a warning.
    """
    analytic = analytic_moments(n, theta, phi, tau, branch)
    numeric = all_moments(evolved_coherent(EvolutionSpec(n, BlochAngles.of(theta, phi), tau)))
    scale = max(1.0, n / 2 * (n / 2 + 1))
    mismatches: List[str] = []
    for field in MOMENT_FIELDS:
        expected, got = getattr(numeric, field), getattr(analytic, field)
        if not math.isclose(got, expected, rel_tol=rtol, abs_tol=rtol * scale):
            get_logger().warning(
                "closed-form `%s`=%r disagrees with matrix path %r at n=%s theta=%r phi=%r tau=%r branch=%s",
                field,
                got,
                expected,
                n,
                theta,
                phi,
                tau,
                branch,
            )
            mismatches.append(field)
    return mismatches
