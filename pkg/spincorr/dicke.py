from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np

from spincorr.util.constants import NORM_TOLERANCE
from spincorr.util.validationtools import (
    validate_axis,
    validate_dimension,
    validate_n_atoms,
)

# dense (N+1)x(N+1) complex matrix in the Dicke basis
OperatorMatrix = np.ndarray

AXES = ("X", "Y", "Z")


class SpinMoments(NamedTuple):
    """
    First and second moments of the collective pseudo-spin.
    `xy`, `yz` and `xz` are symmetrized: <JaJb + JbJa>.
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

    @property
    def j(self) -> float:
        return self.n_atoms / 2

    @property
    def mean_spin(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz])

    @property
    def mean_spin_len2(self) -> float:
        return self.jx**2 + self.jy**2 + self.jz**2

    def casimir_residual(self) -> float:
        return self.jx2 + self.jy2 + self.jz2 - self.j * (self.j + 1)

    def covariance_matrix(self) -> np.ndarray:
        second = np.array(
            [
                [self.jx2, self.xy / 2, self.xz / 2],
                [self.xy / 2, self.jy2, self.yz / 2],
                [self.xz / 2, self.yz / 2, self.jz2],
            ]
        )
        mean = self.mean_spin
        return second - np.outer(mean, mean)


class DickeState:
    """
    Pure state of N two-level atoms living in the maximal-spin (j = N/2) symmetric manifold.

    `amplitudes[k]` is the amplitude of |j, m = N/2 - k>: k = 0 has every atom in its upper level,
    k = N every atom in its lower level.

    The amplitudes are validated to be normalized within `NORM_TOLERANCE`, then renormalized exactly.
    Instances are immutable.
    """

    def __init__(self, n_atoms: int, amplitudes: Union[Sequence[complex], np.ndarray]) -> None:
        validate_n_atoms(n_atoms)
        vector = np.array(amplitudes, dtype=complex)
        if vector.ndim != 1:
            raise ValueError(
                f"`amplitudes` must be one-dimensional but got shape {vector.shape}"
            )
        validate_dimension("amplitudes", n_atoms + 1, len(vector))
        norm = float(np.linalg.norm(vector))
        if norm == 0:
            raise ValueError("`amplitudes` must have a non-zero norm")
        if abs(norm - 1) > NORM_TOLERANCE:
            raise ValueError(
                f"`amplitudes` must have norm 1 (+/- {NORM_TOLERANCE}) but got {norm}"
            )
        vector /= norm
        vector.flags.writeable = False
        self._n_atoms = int(n_atoms)
        self._amplitudes = vector

    @property
    def n_atoms(self) -> int:
        return self._n_atoms

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def j(self) -> float:
        return self._n_atoms / 2

    @property
    def dim(self) -> int:
        return self._n_atoms + 1

    def distance(self, other: "DickeState") -> float:
        validate_dimension("other", self.dim, other.dim)
        return float(np.linalg.norm(self._amplitudes - other._amplitudes))

    def __repr__(self) -> str:
        return f"DickeState(n_atoms={self._n_atoms}, amplitudes={self._amplitudes.tolist()})"


def make_dicke_state(
    n_atoms: int, amplitudes: Union[Sequence[complex], np.ndarray]
) -> DickeState:
    return DickeState(n_atoms, amplitudes)


def basis_state(n_atoms: int, k: int) -> DickeState:
    """
    |j, m = N/2 - k>
    """
    validate_n_atoms(n_atoms)
    amplitudes = np.zeros(n_atoms + 1, dtype=complex)
    amplitudes[k] = 1
    return DickeState(n_atoms, amplitudes)


def _readonly(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


@lru_cache(maxsize=128)
def ladder_coefficients(n_atoms: int) -> np.ndarray:
    """
    Superdiagonal of J+ in the k-indexing: entry k - 1 is sqrt(k(N - k + 1)), k = 1..N.
    """
    validate_n_atoms(n_atoms)
    ks = np.arange(1, n_atoms + 1)
    return _readonly(np.sqrt(ks * (n_atoms - ks + 1)).astype(float))


# dense matrices weigh (N+1)^2 complex entries: 64 MB each near MAX_N_ATOMS
@lru_cache(maxsize=4)
def ladder_operator(n_atoms: int, raising: bool = True) -> OperatorMatrix:
    """
    J+ (or J- if not `raising`): <j, m+1|J+|j, m> = sqrt(j(j+1) - m(m+1)), which in the
    k-indexing reads sqrt(k(N - k + 1)) on the superdiagonal.
    """
    validate_n_atoms(n_atoms)
    raising_matrix = np.diag(ladder_coefficients(n_atoms).astype(complex), k=1)
    if raising:
        return _readonly(raising_matrix)
    return _readonly(raising_matrix.T.copy())


@lru_cache(maxsize=4)
def _collective_operator(n_atoms: int, axis: str) -> OperatorMatrix:
    if axis == "Z":
        ms = n_atoms / 2 - np.arange(n_atoms + 1)
        return _readonly(np.diag(ms).astype(complex))
    raising = ladder_operator(n_atoms, raising=True)
    lowering = ladder_operator(n_atoms, raising=False)
    if axis == "X":
        return _readonly((raising + lowering) / 2)
    return _readonly((raising - lowering) / 2j)


def collective_operator(n_atoms: int, axis: str) -> OperatorMatrix:
    validate_n_atoms(n_atoms)
    validate_axis(axis)
    return _collective_operator(n_atoms, axis)


def expectation(state: DickeState, op: OperatorMatrix) -> complex:
    validate_dimension("op", state.dim, op.shape[0])
    validate_dimension("op", state.dim, op.shape[1])
    psi = state.amplitudes
    return complex(np.vdot(psi, op @ psi))


def apply_collective_operators(
    state: DickeState,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Jx|psi>, Jy|psi> and Jz|psi> computed from the ladder coefficients, without building a matrix.
    """
    psi = state.amplitudes
    coefficients = ladder_coefficients(state.n_atoms)
    raised = np.zeros_like(psi)
    raised[:-1] = coefficients * psi[1:]
    lowered = np.zeros_like(psi)
    lowered[1:] = coefficients * psi[:-1]
    ms = state.n_atoms / 2 - np.arange(state.dim)
    return (raised + lowered) / 2, (raised - lowered) / 2j, ms * psi


def all_moments(state: DickeState) -> SpinMoments:
    psi = state.amplitudes
    jx_psi, jy_psi, jz_psi = apply_collective_operators(state)

    def braket(left: np.ndarray, right: np.ndarray) -> float:
        return float(np.vdot(left, right).real)

    return SpinMoments(
        n_atoms=state.n_atoms,
        jx=braket(psi, jx_psi),
        jy=braket(psi, jy_psi),
        jz=braket(psi, jz_psi),
        # <psi|Ja Jb|psi> = <Ja psi|Jb psi> for Hermitian Ja
        jx2=braket(jx_psi, jx_psi),
        jy2=braket(jy_psi, jy_psi),
        jz2=braket(jz_psi, jz_psi),
        xy=2 * braket(jx_psi, jy_psi),
        yz=2 * braket(jy_psi, jz_psi),
        xz=2 * braket(jx_psi, jz_psi),
    )
