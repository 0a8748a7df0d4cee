import math
import unittest

import numpy as np
from parameterized import parameterized  # type: ignore

from spincorr import dicke
from spincorr.dicke import (
    AXES,
    DickeState,
    all_moments,
    apply_collective_operators,
    basis_state,
    collective_operator,
    expectation,
    ladder_coefficients,
    ladder_operator,
    make_dicke_state,
)


def random_state(rng: np.random.Generator, n_atoms: int) -> DickeState:
    vector = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
    return DickeState(n_atoms, vector / np.linalg.norm(vector))


class TestDickeState(unittest.TestCase):
    def test_basis_state(self) -> None:
        state = make_dicke_state(2, [1, 0, 0])
        self.assertEqual(state.n_atoms, 2)
        self.assertEqual(state.j, 1)
        self.assertEqual(state.dim, 3)
        self.assertAlmostEqual(
            float(np.linalg.norm(state.amplitudes)),
            1,
            msg="a basis state must have norm 1",
        )
        self.assertAlmostEqual(
            all_moments(state).jz,
            1,
            msg="index 0 must be |j, m = j>",
        )

    def test_renormalizes_within_tolerance(self) -> None:
        state = DickeState(1, [1 + 1e-12, 0])
        self.assertEqual(
            float(np.linalg.norm(state.amplitudes)),
            1.0,
            msg="amplitudes within the norm tolerance must be renormalized exactly",
        )

    @parameterized.expand(
        [
            [2, [1, 1, 0], "`amplitudes` must have norm 1"],
            [2, [0, 0, 0], "`amplitudes` must have a non-zero norm"],
            [2, [1, 0], "`amplitudes` must have dimension 3 but got 2"],
            [0, [1], "`n_atoms` must be >= 1 but got 0"],
            [2001, [1] + [0] * 2001, "`n_atoms` must be <= 2000 but got 2001"],
        ]
    )
    def test_validation(self, n_atoms, amplitudes, message) -> None:
        with self.assertRaisesRegex(
            ValueError,
            message,
            msg="invalid states must be rejected at construction",
        ):
            DickeState(n_atoms, amplitudes)

    def test_n_atoms_must_be_an_int(self) -> None:
        with self.assertRaisesRegex(TypeError, "`n_atoms` must be an int but got 2.0"):
            DickeState(2.0, [1, 0, 0])  # type: ignore

    def test_immutability(self) -> None:
        state = basis_state(3, 1)
        with self.assertRaises(
            ValueError,
            msg="`amplitudes` must be read-only",
        ):
            state.amplitudes[0] = 1
        with self.assertRaises(
            AttributeError,
            msg="attribute `n_atoms` must be read-only",
        ):
            state.n_atoms = 4  # type: ignore

    def test_input_is_not_aliased(self) -> None:
        amplitudes = np.array([1, 0, 0], dtype=complex)
        state = DickeState(2, amplitudes)
        amplitudes[0] = 0
        self.assertEqual(
            state.amplitudes[0],
            1,
            msg="mutating the input array must not affect the state",
        )

    def test_distance(self) -> None:
        self.assertAlmostEqual(
            basis_state(2, 0).distance(basis_state(2, 1)),
            math.sqrt(2),
            msg="distinct basis states are sqrt(2) apart",
        )
        with self.assertRaisesRegex(ValueError, "`other` must have dimension 3 but got 4"):
            basis_state(2, 0).distance(basis_state(3, 0))


class TestOperators(unittest.TestCase):
    def test_ladder_operator(self) -> None:
        np.testing.assert_allclose(
            ladder_operator(2),
            np.array([[0, math.sqrt(2), 0], [0, 0, math.sqrt(2)], [0, 0, 0]]),
            err_msg="J+ must carry sqrt(k(N - k + 1)) on its superdiagonal",
        )
        np.testing.assert_allclose(
            ladder_operator(2, raising=False),
            ladder_operator(2).T,
            err_msg="J- must be the transpose of J+",
        )

    @parameterized.expand([[n_atoms] for n_atoms in range(1, 21)])
    def test_algebra(self, n_atoms: int) -> None:
        jx, jy, jz = (collective_operator(n_atoms, axis) for axis in AXES)
        j = n_atoms / 2
        for name, op in zip(AXES, (jx, jy, jz)):
            np.testing.assert_allclose(
                op, op.conj().T, atol=1e-12, err_msg=f"J{name} must be Hermitian"
            )
        np.testing.assert_allclose(
            jx @ jy - jy @ jx, 1j * jz, atol=1e-10, err_msg="[Jx, Jy] must be i Jz"
        )
        np.testing.assert_allclose(
            jy @ jz - jz @ jy, 1j * jx, atol=1e-10, err_msg="[Jy, Jz] must be i Jx"
        )
        np.testing.assert_allclose(
            jz @ jx - jx @ jz, 1j * jy, atol=1e-10, err_msg="[Jz, Jx] must be i Jy"
        )
        np.testing.assert_allclose(
            jx @ jx + jy @ jy + jz @ jz,
            j * (j + 1) * np.eye(n_atoms + 1),
            atol=1e-10,
            err_msg="the Casimir operator must be j(j+1) times the identity",
        )

    def test_operators_are_read_only(self) -> None:
        with self.assertRaises(ValueError, msg="cached operators must be read-only"):
            collective_operator(3, "Z")[0, 0] = 7

    def test_invalid_axis(self) -> None:
        with self.assertRaisesRegex(
            ValueError, "`axis` must be 'X', 'Y' or 'Z' but got 'W'"
        ):
            collective_operator(3, "W")

    def test_expectation(self) -> None:
        state = basis_state(4, 1)
        self.assertAlmostEqual(
            expectation(state, collective_operator(4, "Z")),
            1,
            msg="<Jz> of |2, 1> must be 1",
        )
        with self.assertRaisesRegex(ValueError, "`op` must have dimension 5 but got 3"):
            expectation(state, collective_operator(2, "Z"))


class TestMoments(unittest.TestCase):
    def test_basis_state_moments(self) -> None:
        # |j=1, m=1>: <Jx^2> = <Jy^2> = (j(j+1) - m^2)/2
        moments = all_moments(basis_state(2, 0))
        self.assertAlmostEqual(moments.jx2, 0.5)
        self.assertAlmostEqual(moments.jy2, 0.5)
        self.assertAlmostEqual(moments.jz2, 1)
        self.assertAlmostEqual(moments.jx, 0)
        self.assertAlmostEqual(moments.xy, 0)
        self.assertAlmostEqual(moments.mean_spin_len2, 1)

    def test_moments_against_operators(self) -> None:
        rng = np.random.default_rng(7)
        for n_atoms in (1, 4, 9):
            state = random_state(rng, n_atoms)
            moments = all_moments(state)
            jx, jy, jz = (collective_operator(n_atoms, axis) for axis in AXES)
            expected = {
                "jx": expectation(state, jx),
                "jy": expectation(state, jy),
                "jz": expectation(state, jz),
                "jx2": expectation(state, jx @ jx),
                "jy2": expectation(state, jy @ jy),
                "jz2": expectation(state, jz @ jz),
                "xy": expectation(state, jx @ jy + jy @ jx),
                "yz": expectation(state, jy @ jz + jz @ jy),
                "xz": expectation(state, jx @ jz + jz @ jx),
            }
            for field, value in expected.items():
                self.assertAlmostEqual(
                    getattr(moments, field),
                    value.real,
                    places=10,
                    msg=f"`{field}` must match the operator expectation for N={n_atoms}",
                )
                self.assertAlmostEqual(
                    value.imag, 0, places=10, msg=f"`{field}` must be real"
                )
            self.assertAlmostEqual(
                moments.casimir_residual(),
                0,
                places=9,
                msg="second moments must sum to j(j+1)",
            )

    def test_covariance_matrix(self) -> None:
        moments = all_moments(random_state(np.random.default_rng(3), 6))
        covariance = moments.covariance_matrix()
        np.testing.assert_allclose(covariance, covariance.T)
        self.assertAlmostEqual(
            float(np.trace(covariance)),
            moments.j * (moments.j + 1) - moments.mean_spin_len2,
            places=9,
            msg="total variance must be j(j+1) - |<J>|^2",
        )

    @parameterized.expand([[n_atoms] for n_atoms in (1, 2, 7, 20)])
    def test_operator_application_matches_matrices(self, n_atoms: int) -> None:
        state = random_state(np.random.default_rng(n_atoms), n_atoms)
        for axis, applied in zip(AXES, apply_collective_operators(state)):
            np.testing.assert_allclose(
                applied,
                collective_operator(n_atoms, axis) @ state.amplitudes,
                atol=1e-12,
                err_msg=f"J{axis}|psi> must match the dense J{axis}",
            )

    def test_moments_allocate_no_matrix(self) -> None:
        dicke._collective_operator.cache_clear()
        ladder_operator.cache_clear()
        moments = all_moments(random_state(np.random.default_rng(11), 1500))
        self.assertAlmostEqual(moments.casimir_residual(), 0, delta=1e-6)
        self.assertEqual(
            dicke._collective_operator.cache_info().currsize,
            0,
            msg="moments must not build dense collective operators",
        )
        self.assertEqual(
            ladder_operator.cache_info().currsize,
            0,
            msg="moments must not build dense ladder operators",
        )
        self.assertEqual(len(ladder_coefficients(1500)), 1500)

    def test_dense_operator_caches_are_small(self) -> None:
        for cached in (ladder_operator, dicke._collective_operator):
            self.assertLessEqual(
                cached.cache_info().maxsize,
                4,
                msg="dense operators near the atom cap must not pile up in memory",
            )
