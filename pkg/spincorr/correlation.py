import math
from typing import NamedTuple

import numpy as np

from spincorr.dicke import DickeState, SpinMoments, all_moments
from spincorr.util.constants import DEGENERACY_SCALE, VARIANCE_CLAMP
from spincorr.util.errors import DegenerateFrameError, NegativeVarianceError


class FrameAngles(NamedTuple):
    """
    Orientation of the mean-spin frame: z' points along <J> at polar angle `theta1` and azimuth `phi1`.
    """

    theta1: float
    phi1: float
    degenerate_phi: bool = False
    degenerate_full: bool = False


class PrimedFluctuations(NamedTuple):
    dx2: float
    dy2: float
    dz2: float
    mean_spin_len2: float
    degenerate: bool = False


class CorrelationTriple(NamedTuple):
    cx: float
    cy: float
    cz: float
    s: float
    degenerate: bool = False

    @classmethod
    def from_terms(
        cls, cx: float, cy: float, cz: float, degenerate: bool = False
    ) -> "CorrelationTriple":
        return cls(
            float(cx),
            float(cy),
            float(cz),
            math.sqrt((cx**2 + cy**2 + cz**2) / 3),
            degenerate,
        )


class RamseyParameters(NamedTuple):
    xi_x: float
    xi_y: float
    xi_z: float


def degeneracy_threshold(n_atoms: int) -> float:
    return DEGENERACY_SCALE * n_atoms


def frame_angles(moments: SpinMoments) -> FrameAngles:
    """
    Below the degeneracy threshold the azimuth falls back to 0 (`degenerate_phi`),
    and a vanishing mean spin falls back to the lab frame (`degenerate_full`).
    """
    threshold = degeneracy_threshold(moments.n_atoms)
    transverse = math.hypot(moments.jx, moments.jy)
    if math.hypot(transverse, moments.jz) < threshold:
        return FrameAngles(0.0, 0.0, degenerate_phi=True, degenerate_full=True)
    theta1 = math.atan2(transverse, moments.jz)
    if transverse < threshold:
        return FrameAngles(theta1, 0.0, degenerate_phi=True)
    return FrameAngles(theta1, math.atan2(moments.jy, moments.jx))


def rotation_matrix(frame: FrameAngles) -> np.ndarray:
    """
    Rows are the lab-frame components of x', y' and z'.
    """
    if frame.degenerate_full:
        return np.eye(3)
    sin_theta, cos_theta = math.sin(frame.theta1), math.cos(frame.theta1)
    sin_phi, cos_phi = math.sin(frame.phi1), math.cos(frame.phi1)
    return np.array(
        [
            [cos_theta * cos_phi, cos_theta * sin_phi, -sin_theta],
            [-sin_phi, cos_phi, 0.0],
            [sin_theta * cos_phi, sin_theta * sin_phi, cos_theta],
        ]
    )


def primed_means(moments: SpinMoments) -> np.ndarray:
    """
    (<Jx'>, <Jy'>, <Jz'>): (0, 0, |<J>|) unless the frame is degenerate.
    """
    return rotation_matrix(frame_angles(moments)) @ moments.mean_spin


def _clamped(axis: str, value: float, window: float, clamp: bool) -> float:
    if value >= 0 or not clamp:
        return float(value)
    if value >= -window:
        return 0.0
    raise NegativeVarianceError(axis, float(value))


def primed_fluctuations_from_moments(
    moments: SpinMoments, clamp: bool = True
) -> PrimedFluctuations:
    """
    Variances along x', y' and z', obtained by conjugating the covariance matrix of the moments
    through the mean-spin frame rotation.

    Args:
        moments (SpinMoments): Moments of the collective spin.
        clamp (bool, optional): If True, negative variances within the clamp window are set to 0 and
            more negative ones raise `NegativeVarianceError`. If False, they are returned as is (default: True).

    Returns:
        PrimedFluctuations: The primed variances, flagged `degenerate` when computed in the lab frame.
    """
    frame = frame_angles(moments)
    rotation = rotation_matrix(frame)
    variances = np.einsum(
        "ia,ab,ib->i", rotation, moments.covariance_matrix(), rotation
    )
    window = VARIANCE_CLAMP * max(1.0, moments.j * (moments.j + 1))
    dx2, dy2, dz2 = (
        _clamped(axis, value, window, clamp)
        for axis, value in zip(("x'", "y'", "z'"), variances)
    )
    return PrimedFluctuations(
        dx2, dy2, dz2, moments.mean_spin_len2, degenerate=frame.degenerate_full
    )


def primed_fluctuations(state: DickeState) -> PrimedFluctuations:
    return primed_fluctuations_from_moments(all_moments(state))


def correlation_triple_from_moments(
    moments: SpinMoments, clamp: bool = True
) -> CorrelationTriple:
    fluctuations = primed_fluctuations_from_moments(moments, clamp=clamp)
    n_atoms = moments.n_atoms
    coherent_level = n_atoms / 4
    return CorrelationTriple.from_terms(
        cx=fluctuations.dx2 - coherent_level,
        cy=fluctuations.dy2 - coherent_level,
        cz=fluctuations.dz2 - coherent_level + fluctuations.mean_spin_len2 / n_atoms,
        degenerate=fluctuations.degenerate,
    )


def correlation_triple(state: DickeState) -> CorrelationTriple:
    """
    Pairwise correlation terms of the primed variances and their root mean square S:
    cx = dx2 - N/4, cy = dy2 - N/4, cz = dz2 - N/4 + |<J>|^2/N.
    """
    return correlation_triple_from_moments(all_moments(state))


def s_from_fluctuations(fluctuations: PrimedFluctuations, n_atoms: int) -> float:
    """
    S expanded in the primed variances, without forming the correlation terms.
    """
    half = n_atoms / 2
    spin_term = fluctuations.mean_spin_len2 / n_atoms
    squared = (
        fluctuations.dx2 * (fluctuations.dx2 - half)
        + fluctuations.dy2 * (fluctuations.dy2 - half)
        + fluctuations.dz2 * (fluctuations.dz2 - half + 2 * spin_term)
        + (spin_term - n_atoms / 4) ** 2
        + n_atoms**2 / 8
    )
    return math.sqrt(max(squared, 0.0) / 3)


def ramsey_parameters_from_moments(moments: SpinMoments) -> RamseyParameters:
    if frame_angles(moments).degenerate_full:
        raise DegenerateFrameError(
            math.sqrt(moments.mean_spin_len2), degeneracy_threshold(moments.n_atoms)
        )
    fluctuations = primed_fluctuations_from_moments(moments)
    # sqrt(2j) = sqrt(N)
    scale = math.sqrt(moments.n_atoms / fluctuations.mean_spin_len2)
    return RamseyParameters(
        xi_x=scale * math.sqrt(fluctuations.dx2),
        xi_y=scale * math.sqrt(fluctuations.dy2),
        xi_z=scale * math.sqrt(fluctuations.dz2),
    )


def ramsey_parameters(state: DickeState) -> RamseyParameters:
    """
    Spectroscopic squeezing parameters xi_a = sqrt(2j) dJa' / |<J>|, equal to 1 at the standard quantum limit.

    Raises:
        DegenerateFrameError: if the mean spin vanishes.
    """
    return ramsey_parameters_from_moments(all_moments(state))


def s_from_ramsey(
    params: RamseyParameters, mean_spin_len2: float, n_atoms: int
) -> float:
    to_variance = mean_spin_len2 / n_atoms
    return s_from_fluctuations(
        PrimedFluctuations(
            dx2=params.xi_x**2 * to_variance,
            dy2=params.xi_y**2 * to_variance,
            dz2=params.xi_z**2 * to_variance,
            mean_spin_len2=mean_spin_len2,
        ),
        n_atoms,
    )
