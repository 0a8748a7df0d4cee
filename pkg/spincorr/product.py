"""
Brute-force engine over the 2^N product basis of N two-level atoms.
Bit b of an amplitude's index is atom b's level: 1 is the upper level, 0 the lower one.
"""

from functools import reduce
from typing import Dict, NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy.special import comb  # type: ignore

from spincorr.correlation import CorrelationTriple, FrameAngles, rotation_matrix
from spincorr.dicke import AXES, DickeState, SpinMoments
from spincorr.util.constants import NORM_TOLERANCE, PRODUCT_MAX_N_ATOMS
from spincorr.util.validationtools import (
    validate_atom_index,
    validate_dimension,
    validate_n_atoms,
)

# single-atom pseudo-spin operators in the (lower, upper) basis
SINGLE_ATOM_OPERATORS: Dict[str, np.ndarray] = {
    "X": np.array([[0, 0.5], [0.5, 0]], dtype=complex),
    "Y": np.array([[0, 0.5j], [-0.5j, 0]], dtype=complex),
    "Z": np.array([[-0.5, 0], [0, 0.5]], dtype=complex),
}


class ProductState:
    """
    Pure state of N <= `PRODUCT_MAX_N_ATOMS` atoms in the product basis. Immutable.
    """

    def __init__(
        self, n_atoms: int, amplitudes: Union[Sequence[complex], np.ndarray]
    ) -> None:
        try:
            validate_n_atoms(n_atoms, max_n_atoms=PRODUCT_MAX_N_ATOMS)
        except ValueError as e:
            raise ValueError(
                f"{e}: the product basis is capped, use the Dicke-basis functions for larger N"
            ) from e
        vector = np.array(amplitudes, dtype=complex)
        validate_dimension("amplitudes", 2**n_atoms, vector.size)
        norm = float(np.linalg.norm(vector))
        if abs(norm - 1) > NORM_TOLERANCE:
            raise ValueError(
                f"`amplitudes` must have norm 1 (+/- {NORM_TOLERANCE}) but got {norm}"
            )
        vector = vector.reshape(-1) / norm
        vector.flags.writeable = False
        self._n_atoms = int(n_atoms)
        self._amplitudes = vector

    @property
    def n_atoms(self) -> int:
        return self._n_atoms

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def tensor(self) -> np.ndarray:
        """
        Amplitudes reshaped to one axis per atom; atom b lives on axis N - 1 - b.
        """
        return self._amplitudes.reshape((2,) * self._n_atoms)

    def __repr__(self) -> str:
        return f"ProductState(n_atoms={self._n_atoms}, amplitudes={self._amplitudes.tolist()})"


def tensor_product_state(kets: Sequence[Sequence[complex]]) -> ProductState:
    """
    Product of single-atom kets, `kets[b]` being (lower, upper) amplitudes of atom b.
    """
    # np.kron puts its first factor on the most significant bits
    vector = reduce(np.kron, [np.asarray(ket, dtype=complex) for ket in reversed(kets)])
    return ProductState(len(kets), vector)


def upper_level_counts(n_atoms: int) -> np.ndarray:
    indices = np.arange(2**n_atoms)
    return ((indices[:, None] >> np.arange(n_atoms)) & 1).sum(axis=1)


def embed_symmetric(state: DickeState) -> ProductState:
    """
    Spreads each Dicke amplitude over the bitstrings with the matching number of lower-level atoms,
    with weight amplitude_k / sqrt(C(N, k)).
    """
    n_atoms = state.n_atoms
    validate_n_atoms(n_atoms, max_n_atoms=PRODUCT_MAX_N_ATOMS)
    lower_counts = n_atoms - upper_level_counts(n_atoms)
    weights = state.amplitudes[lower_counts] / np.sqrt(comb(n_atoms, lower_counts))
    return ProductState(n_atoms, weights)


def _reduced_density_matrix(state: ProductState, atoms: Tuple[int, ...]) -> np.ndarray:
    n_atoms = state.n_atoms
    for atom in atoms:
        validate_atom_index(atom, n_atoms)
    axes = [n_atoms - 1 - atom for atom in atoms]
    kept = np.moveaxis(state.tensor(), axes, list(range(len(atoms))))
    kept = kept.reshape(2 ** len(atoms), -1)
    return kept @ kept.conj().T


def _trace(density: np.ndarray, operator: np.ndarray) -> float:
    return float(np.trace(density @ operator).real)


def _apply_on_atom(tensor: np.ndarray, operator: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(operator, tensor, axes=([1], [axis])), 0, axis)


def single_atom_moments(state: ProductState, atom: int) -> SpinMoments:
    """
    Moments of atom `atom`'s own pseudo-spin, as a one-atom SpinMoments.
    """
    density = _reduced_density_matrix(state, (atom,))
    x, y, z = (SINGLE_ATOM_OPERATORS[axis] for axis in AXES)
    return SpinMoments(
        n_atoms=1,
        jx=_trace(density, x),
        jy=_trace(density, y),
        jz=_trace(density, z),
        jx2=_trace(density, x @ x),
        jy2=_trace(density, y @ y),
        jz2=_trace(density, z @ z),
        xy=_trace(density, x @ y + y @ x),
        yz=_trace(density, y @ z + z @ y),
        xz=_trace(density, x @ z + z @ x),
    )


def pair_covariance(
    state: ProductState, first: int, second: int
) -> np.ndarray:
    """
    cov[a][b] = <J_{first,a} J_{second,b}> - <J_{first,a}><J_{second,b}> for distinct atoms.
    """
    if first == second:
        raise ValueError(f"`first` and `second` must differ but got {first} twice")
    pair = _reduced_density_matrix(state, (first, second))
    first_means = single_atom_moments(state, first).mean_spin
    second_means = single_atom_moments(state, second).mean_spin
    joint = np.array(
        [
            [
                _trace(pair, np.kron(SINGLE_ATOM_OPERATORS[a], SINGLE_ATOM_OPERATORS[b]))
                for b in AXES
            ]
            for a in AXES
        ]
    )
    return joint - np.outer(first_means, second_means)


def pairwise_correlation_sums(
    state: ProductState, frame: FrameAngles
) -> CorrelationTriple:
    """
    Sums over ordered pairs i != l of the pair covariances projected on x', y' and z'.

    Args:
        state (ProductState): The state.
        frame (FrameAngles): Mean-spin frame of the same state's collective moments.

    Returns:
        CorrelationTriple: (C_X, C_Y, C_Z) and their root mean square.
    """
    rotation = rotation_matrix(frame)
    totals = np.zeros(3)
    # fixed (i, l) order keeps the reduction reproducible
    for first in range(state.n_atoms):
        for second in range(first + 1, state.n_atoms):
            covariance = pair_covariance(state, first, second)
            # the (l, i) term is the transpose, with the same quadratic form
            totals += 2 * np.einsum("ia,ab,ib->i", rotation, covariance, rotation)
    return CorrelationTriple.from_terms(*totals, degenerate=frame.degenerate_full)


class PerAtomFluctuations(NamedTuple):
    dx2: Tuple[float, ...]
    dy2: Tuple[float, ...]
    dz2: Tuple[float, ...]
    expected_dz2: float
    max_deviation: float


def per_atom_fluctuation_check(
    state: ProductState, frame: FrameAngles
) -> PerAtomFluctuations:
    """
    Per-atom variances along x', y' and z', against 1/4, 1/4 and 1/4 - |<J>|^2/N^2.
    """
    rotation = rotation_matrix(frame)
    atom_moments = [single_atom_moments(state, atom) for atom in range(state.n_atoms)]
    collective_mean = np.sum([moments.mean_spin for moments in atom_moments], axis=0)
    expected_dz2 = 0.25 - float(collective_mean @ collective_mean) / state.n_atoms**2
    variances = np.array(
        [
            np.einsum("ia,ab,ib->i", rotation, moments.covariance_matrix(), rotation)
            for moments in atom_moments
        ]
    )
    expected = np.array([0.25, 0.25, expected_dz2])
    return PerAtomFluctuations(
        dx2=tuple(variances[:, 0]),
        dy2=tuple(variances[:, 1]),
        dz2=tuple(variances[:, 2]),
        expected_dz2=expected_dz2,
        max_deviation=float(np.max(np.abs(variances - expected))),
    )


def collective_moments(state: ProductState) -> SpinMoments:
    """
    Collective moments computed directly in the product basis, J_a = sum_i J_{i,a}.
    """
    n_atoms = state.n_atoms
    tensor = state.tensor()
    jx_psi, jy_psi, jz_psi = (
        sum(
            _apply_on_atom(tensor, SINGLE_ATOM_OPERATORS[axis], atom_axis)
            for atom_axis in range(n_atoms)
        ).reshape(-1)
        for axis in AXES
    )
    psi = state.amplitudes

    def braket(left: np.ndarray, right: np.ndarray) -> float:
        return float(np.vdot(left, right).real)

    return SpinMoments(
        n_atoms=n_atoms,
        jx=braket(psi, jx_psi),
        jy=braket(psi, jy_psi),
        jz=braket(psi, jz_psi),
        jx2=braket(jx_psi, jx_psi),
        jy2=braket(jy_psi, jy_psi),
        jz2=braket(jz_psi, jz_psi),
        xy=2 * braket(jx_psi, jy_psi),
        yz=2 * braket(jy_psi, jz_psi),
        xz=2 * braket(jx_psi, jz_psi),
    )
