import math
from typing import NamedTuple

import numpy as np

from spincorr.coherent import BlochAngles, coherent_state
from spincorr.dicke import DickeState, OperatorMatrix, collective_operator
from spincorr.util.validationtools import (
    validate_finite,
    validate_m,
    validate_n_atoms,
    validate_tau,
    validate_theta,
)

TWO_PI = 2 * math.pi


class EvolutionSpec(NamedTuple):
    """
    Coherent state |angles> of `n_atoms` atoms evolved for the dimensionless interaction time `tau`.
    """

    n_atoms: int
    angles: BlochAngles
    tau: float


class CatDecomposition(NamedTuple):
    m: int
    parity: str
    coefficients: np.ndarray

    def global_phase(self, n_atoms: int) -> complex:
        return complex(np.exp(-1j * math.pi * n_atoms / self.m))

    def phase_offsets(self, n_atoms: int) -> np.ndarray:
        """
        Azimuthal shift of each coherent component: pi(2q - N)/m, plus pi/m for even m.
        """
        qs = np.arange(self.m)
        shift = 1 if self.parity == "even" else 0
        return math.pi * (2 * qs - n_atoms + shift) / self.m


def phase_exponents(n_atoms: int) -> np.ndarray:
    """
    Integer eigenvalues N + (N - 1)k - k^2 of J^2 - Jz^2 + Jz, i.e. j(j+1) - m^2 + m with m = N/2 - k.
    """
    validate_n_atoms(n_atoms)
    ks = np.arange(n_atoms + 1, dtype=np.int64)
    return n_atoms + (n_atoms - 1) * ks - ks * ks


def hamiltonian(n_atoms: int) -> OperatorMatrix:
    """
    Dispersive Hamiltonian J^2 - Jz^2 + Jz in units of the coupling, as a dense matrix.
    """
    jx, jy, jz = (collective_operator(n_atoms, axis) for axis in ("X", "Y", "Z"))
    return jx @ jx + jy @ jy + jz


def evolve(state: DickeState, tau: float) -> DickeState:
    """
    Exact evolution under the diagonal dispersive Hamiltonian: amplitude_k picks up exp(-i tau [N + (N-1)k - k^2]).
    """
    validate_finite("tau", tau)
    # exponents are integers: tau only matters modulo 2pi
    phases = np.mod(math.fmod(tau, TWO_PI) * phase_exponents(state.n_atoms), TWO_PI)
    return DickeState(state.n_atoms, state.amplitudes * np.exp(-1j * phases))


def evolved_coherent(spec: EvolutionSpec) -> DickeState:
    validate_n_atoms(spec.n_atoms)
    validate_theta(spec.angles.theta)
    validate_tau(spec.tau)
    return evolve(coherent_state(spec.n_atoms, spec.angles), spec.tau)


def cat_coefficients(m: int) -> CatDecomposition:
    """
    Weights f_q of the m coherent components reached at tau = pi/m: the discrete Fourier transform
    of exp(i pi k(k+1)/m) for odd m, of exp(i pi k^2/m) for even m.
    """
    validate_m(m)
    ks = np.arange(m, dtype=np.int64)
    parity = "odd" if m % 2 else "even"
    exponents = ks * (ks + 1) if parity == "odd" else ks * ks
    # exp(i pi x / m) has period 2m in the integer x
    sequence = np.exp(1j * math.pi * (exponents % (2 * m)) / m)
    coefficients = np.fft.fft(sequence) / m
    coefficients.flags.writeable = False
    return CatDecomposition(m=m, parity=parity, coefficients=coefficients)


def cat_state(n_atoms: int, angles: BlochAngles, m: int) -> DickeState:
    """
    Superposition of m coherent states e^{-i pi N/m} sum_q f_q |theta, phi + offset_q>.

    Args:
        n_atoms (int): Number of atoms N.
        angles (BlochAngles): Initial coherent state angles.
        m (int): Number of components, >= 2.

    Returns:
        DickeState: The cat state, equal to the coherent state evolved for tau = pi/m.
    """
    validate_n_atoms(n_atoms)
    decomposition = cat_coefficients(m)
    amplitudes = np.zeros(n_atoms + 1, dtype=complex)
    for coefficient, offset in zip(
        decomposition.coefficients, decomposition.phase_offsets(n_atoms)
    ):
        component = coherent_state(
            n_atoms, BlochAngles.of(angles.theta, angles.phi + offset)
        )
        amplitudes += coefficient * component.amplitudes
    return DickeState(n_atoms, decomposition.global_phase(n_atoms) * amplitudes)
