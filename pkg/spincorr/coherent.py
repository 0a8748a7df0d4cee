import math
from enum import Enum
from typing import NamedTuple, Tuple

import numpy as np
from scipy.special import xlogy  # type: ignore

from spincorr.correlation import (
    degeneracy_threshold,
    frame_angles,
    primed_fluctuations_from_moments,
)
from spincorr.dicke import DickeState, all_moments
from spincorr.util.constants import CSS_TOLERANCE
from spincorr.util.errors import DegenerateFrameError
from spincorr.util.validationtools import (
    validate_finite,
    validate_n_atoms,
    validate_theta,
)

TWO_PI = 2 * math.pi


class BlochAngles(NamedTuple):
    """
    Polar angle `theta` in [0, pi] (theta = 0 is every atom in its lower level)
    and azimuth `phi` in [0, 2pi).
    Build instances with `BlochAngles.of` to get validation and azimuth normalization.
    """

    theta: float
    phi: float

    @classmethod
    def of(cls, theta: float, phi: float = 0.0) -> "BlochAngles":
        validate_theta(theta)
        validate_finite("phi", phi)
        phi = float(phi) % TWO_PI
        if phi == TWO_PI:
            phi = 0.0
        return cls(float(theta), phi)


class SpinStateClass(Enum):
    CSS = "CSS"
    SSS = "SSS"
    NEITHER = "Neither"


def log_binomials(n: int) -> np.ndarray:
    """
    log C(n, k) for k in [0..n], accumulated from the ratios C(n, k) / C(n, k-1) = (n - k + 1) / k.
    """
    ks = np.arange(1, n + 1)
    return np.concatenate(([0.0], np.cumsum(np.log((n - ks + 1) / ks))))


def coherent_state(n_atoms: int, angles: BlochAngles) -> DickeState:
    """
    Atomic coherent state |theta, phi>:
    amplitude_k = sqrt(C(N, k)) e^{ik phi} sin^{N-k}(theta/2) cos^k(theta/2).

    Args:
        n_atoms (int): Number of two-level atoms N.
        angles (BlochAngles): Polar and azimuthal angles of the state on the Bloch sphere.

    Returns:
        DickeState: The coherent state in the Dicke basis.
    """
    validate_n_atoms(n_atoms)
    validate_theta(angles.theta)
    validate_finite("phi", angles.phi)
    ks = np.arange(n_atoms + 1)
    half_theta = angles.theta / 2
    # xlogy(0, 0) == 0 keeps the poles exact
    log_magnitudes = (
        log_binomials(n_atoms) / 2
        + xlogy(n_atoms - ks, math.sin(half_theta))
        + xlogy(ks, math.cos(half_theta))
    )
    amplitudes = np.exp(log_magnitudes) * np.exp(1j * ks * angles.phi)
    return DickeState(n_atoms, amplitudes)


def classify_css_sss(
    state: DickeState,
) -> Tuple[SpinStateClass, Tuple[float, float]]:
    """
    Compares the variances along x' and y' (the mean-spin frame's transverse axes) with the coherent level N/4.

    Raises:
        DegenerateFrameError: if the mean spin is too short to define a frame.
    """
    moments = all_moments(state)
    if frame_angles(moments).degenerate_full:
        raise DegenerateFrameError(
            math.sqrt(moments.mean_spin_len2), degeneracy_threshold(state.n_atoms)
        )
    fluctuations = primed_fluctuations_from_moments(moments)
    variances = (fluctuations.dx2, fluctuations.dy2)
    coherent_level = state.n_atoms / 4
    if all(abs(variance - coherent_level) <= CSS_TOLERANCE for variance in variances):
        return SpinStateClass.CSS, variances
    if min(variances) < coherent_level - CSS_TOLERANCE:
        return SpinStateClass.SSS, variances
    return SpinStateClass.NEITHER, variances
