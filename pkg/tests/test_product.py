import math
import unittest

import numpy as np
from parameterized import parameterized  # type: ignore

from spincorr.coherent import BlochAngles, coherent_state
from spincorr.correlation import (
    correlation_triple,
    frame_angles,
    primed_fluctuations,
    rotation_matrix,
)
from spincorr.dicke import DickeState, all_moments, basis_state
from spincorr.dynamics import EvolutionSpec, evolved_coherent
from spincorr.product import (
    ProductState,
    collective_moments,
    embed_symmetric,
    pair_covariance,
    pairwise_correlation_sums,
    per_atom_fluctuation_check,
    single_atom_moments,
    tensor_product_state,
    upper_level_counts,
)


def random_dicke_states(seed: int, count: int, max_n_atoms: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n_atoms = int(rng.integers(2, max_n_atoms + 1))
        vector = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
        yield DickeState(n_atoms, vector / np.linalg.norm(vector))


def evolved_states():
    rng = np.random.default_rng(21)
    for _ in range(20):
        n_atoms = int(rng.integers(2, 11))
        angles = BlochAngles.of(float(rng.uniform(0.1, math.pi - 0.1)), float(rng.uniform(0, 2 * math.pi)))
        yield evolved_coherent(EvolutionSpec(n_atoms, angles, float(rng.uniform(0.05, 3.0))))


class TestEmbedding(unittest.TestCase):
    def test_upper_level_counts(self) -> None:
        self.assertListEqual(upper_level_counts(2).tolist(), [0, 1, 1, 2])

    def test_all_upper(self) -> None:
        product = embed_symmetric(basis_state(2, 0))
        np.testing.assert_allclose(product.amplitudes, [0, 0, 0, 1])

    def test_triplet(self) -> None:
        product = embed_symmetric(basis_state(2, 1))
        np.testing.assert_allclose(
            product.amplitudes, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0]
        )

    def test_coherent_state_is_a_product(self) -> None:
        theta, phi = math.pi / 3, 0.7
        ket = [math.cos(theta / 2) * np.exp(1j * phi), math.sin(theta / 2)]
        embedded = embed_symmetric(coherent_state(3, BlochAngles.of(theta, phi)))
        np.testing.assert_allclose(
            embedded.amplitudes,
            tensor_product_state([ket, ket, ket]).amplitudes,
            atol=1e-12,
            err_msg="a coherent state must be the tensor power of its single-atom state",
        )

    def test_tensor_product_bit_order(self) -> None:
        lower, upper = [1, 0], [0, 1]
        product = tensor_product_state([upper, lower, lower])
        self.assertEqual(
            int(np.argmax(np.abs(product.amplitudes))),
            1,
            msg="atom 0 must be the least significant bit",
        )
        self.assertAlmostEqual(single_atom_moments(product, 0).jz, 0.5)
        self.assertAlmostEqual(single_atom_moments(product, 1).jz, -0.5)

    def test_cap(self) -> None:
        with self.assertRaisesRegex(ValueError, "the product basis is capped"):
            ProductState(15, np.zeros(2**15))

    def test_read_only(self) -> None:
        product = embed_symmetric(basis_state(3, 1))
        with self.assertRaises(ValueError):
            product.amplitudes[0] = 1


class TestSingleAtom(unittest.TestCase):
    def test_coherent_state_atoms(self) -> None:
        state = coherent_state(5, BlochAngles.of(1.0, 0.3))
        embedded = embed_symmetric(state)
        collective_mean = all_moments(state).mean_spin
        for atom in range(5):
            moments = single_atom_moments(embedded, atom)
            np.testing.assert_allclose(moments.mean_spin, collective_mean / 5, atol=1e-12)
            self.assertAlmostEqual(moments.jx2, 0.25, msg="a spin-1/2 component squares to 1/4")
            self.assertAlmostEqual(moments.jy2, 0.25)
            self.assertAlmostEqual(moments.jz2, 0.25)

    def test_all_upper_atom(self) -> None:
        self.assertAlmostEqual(
            single_atom_moments(embed_symmetric(basis_state(4, 0)), 2).jz, 0.5
        )

    def test_atom_out_of_range(self) -> None:
        with self.assertRaisesRegex(IndexError, "`atom` must be in \\[0, 3\\) but got 3"):
            single_atom_moments(embed_symmetric(basis_state(3, 0)), 3)

    def test_pair_covariance_of_distinct_atoms(self) -> None:
        product = embed_symmetric(basis_state(2, 1))
        with self.assertRaisesRegex(ValueError, "`first` and `second` must differ"):
            pair_covariance(product, 1, 1)
        # triplet |01> + |10>: <X1 X2> = <Y1 Y2> = 1/4, <Z1 Z2> = -1/4
        np.testing.assert_allclose(
            pair_covariance(product, 0, 1),
            np.diag([0.25, 0.25, -0.25]),
            atol=1e-12,
        )


class TestOracle(unittest.TestCase):
    def assert_triangle(self, state: DickeState) -> None:
        moments = all_moments(state)
        frame = frame_angles(moments)
        embedded = embed_symmetric(state)
        sums = pairwise_correlation_sums(embedded, frame)
        triple = correlation_triple(state)
        for name, expected, got in zip(("cx", "cy", "cz"), triple[:3], sums[:3]):
            self.assertAlmostEqual(
                got,
                expected,
                delta=1e-9,
                msg=f"pairwise `{name}` must match the collective route at N={state.n_atoms}",
            )
        check = per_atom_fluctuation_check(embedded, frame)
        self.assertLess(
            check.max_deviation,
            1e-9,
            msg="per-atom variances must be 1/4, 1/4 and 1/4 - |<J>|^2/N^2 in the mean-spin frame",
        )
        fluctuations = primed_fluctuations(state)
        for name, total, per_atom, correlation in zip(
            ("dx2", "dy2", "dz2"),
            fluctuations[:3],
            (check.dx2, check.dy2, check.dz2),
            sums[:3],
        ):
            self.assertAlmostEqual(
                total,
                sum(per_atom) + correlation,
                delta=1e-9,
                msg=f"`{name}` must split into per-atom variances plus pair correlations",
            )

    def test_random_states(self) -> None:
        for state in random_dicke_states(seed=5, count=50, max_n_atoms=10):
            self.assert_triangle(state)

    def test_evolved_states(self) -> None:
        for state in evolved_states():
            self.assert_triangle(state)

    def test_two_component_cat(self) -> None:
        state = evolved_coherent(EvolutionSpec(10, BlochAngles.of(math.pi / 4), math.pi / 2))
        sums = pairwise_correlation_sums(
            embed_symmetric(state), frame_angles(all_moments(state))
        )
        for expected, got in zip((-0.06579, 11.25000, 0.04382), sums[:3]):
            self.assertAlmostEqual(got, expected, delta=5e-5)
        self.assertAlmostEqual(sums.s, 6.49535, delta=5e-5)

    def test_two_atoms(self) -> None:
        state = evolved_coherent(EvolutionSpec(2, BlochAngles.of(math.pi / 4), math.pi / 8))
        self.assertAlmostEqual(
            pairwise_correlation_sums(embed_symmetric(state), frame_angles(all_moments(state))).s,
            correlation_triple(state).s,
            delta=1e-10,
        )

    @parameterized.expand([[n_atoms] for n_atoms in (1, 3, 6)])
    def test_collective_moments(self, n_atoms: int) -> None:
        state = evolved_coherent(EvolutionSpec(n_atoms, BlochAngles.of(0.8, 0.2), 0.4))
        expected = all_moments(state)
        got = collective_moments(embed_symmetric(state))
        for field in expected._fields:
            self.assertAlmostEqual(
                getattr(got, field),
                getattr(expected, field),
                places=10,
                msg=f"`{field}` must not depend on the basis",
            )

    def test_rotation_matches_frame(self) -> None:
        state = evolved_coherent(EvolutionSpec(4, BlochAngles.of(1.0), 0.5))
        moments = all_moments(state)
        primed = rotation_matrix(frame_angles(moments)) @ moments.mean_spin
        self.assertAlmostEqual(primed[0], 0.0, places=10)
        self.assertAlmostEqual(primed[1], 0.0, places=10)
