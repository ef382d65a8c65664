"""This module contains tests for the chevalley module.
"""

import unittest

import numpy as np

from pencillab.chevalley import char_subspace, eigenprojections, jordan_chevalley
from pencillab.errors import IllConditioned, NotAnEigenvalue
from pencillab.numcore import (
    Subspace, Tolerances, is_diagonalizable, subspace_distance
)
from pencillab.utils import make_rng

JORDAN = np.array([
    [2, 1, 0],
    [0, 2, 0],
    [0, 0, 5],
], dtype=np.complex128)
POOL = (-2, 1, 3 + 1j)


def similarity(seed, n):
    rng = make_rng(seed)
    return 3 * np.eye(n) + rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def engineered_matrix(rng):
    """A conjugated Jordan form of size 2 to 6 whose eigenvalues have
    multiplicity up to 3, split into random Jordan blocks."""
    n = int(rng.integers(2, 7))
    multiplicities = [0, 0, 0]
    for _ in range(n):
        free = [k for k in range(3) if multiplicities[k] < 3]
        multiplicities[int(rng.choice(free))] += 1
    jordan = np.zeros((n, n), dtype=np.complex128)
    start = 0
    for value, multiplicity in zip(POOL, multiplicities):
        remaining = multiplicity
        while remaining:
            size = int(rng.integers(1, remaining + 1))
            block = slice(start, start + size)
            jordan[block, block] = value * np.eye(size) + np.eye(size, k=1)
            start += size
            remaining -= size
    S = np.eye(n) + 0.3 * (
        rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    )
    return S @ jordan @ np.linalg.inv(S), n


class TestEigenprojections(unittest.TestCase):
    """Tests for eigenprojections."""

    def test_diagonal(self):
        projections = eigenprojections(np.diag([1, 2, 2]))
        self.assertEqual(projections.multiplicities, [1, 2])
        np.testing.assert_allclose(projections.values, [1, 2], atol=1e-10)
        np.testing.assert_allclose(
            projections.projections[0], np.diag([1, 0, 0]), atol=1e-10
        )
        np.testing.assert_allclose(
            projections.projections[1], np.diag([0, 1, 1]), atol=1e-10
        )

    def test_defective_matrix(self):
        S = similarity(1, 3)
        matrix = S @ JORDAN @ np.linalg.inv(S)
        projections = eigenprojections(matrix)
        self.assertEqual(len(projections), 2)
        expected = S @ np.diag([1, 1, 0]) @ np.linalg.inv(S)
        np.testing.assert_allclose(
            projections.projections[0], expected, atol=1e-8
        )
        for name, value in projections.residuals(matrix).items():
            self.assertLess(value, 1e-8, name)

    def test_random_matrix_residuals(self):
        rng = make_rng(4)
        for _ in range(20):
            matrix = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            projections = eigenprojections(matrix)
            for name, value in projections.residuals(matrix).items():
                self.assertLess(value, 1e-8, name)

    def test_ill_conditioned(self):
        with self.assertRaises(IllConditioned):
            eigenprojections(
                np.diag([1, 1 + 5e-7]), Tolerances(eps_root=1e-20)
            )

    def test_identities_are_enforced(self):
        S = similarity(3, 3)
        matrix = S @ JORDAN @ np.linalg.inv(S)
        self.assertEqual(len(eigenprojections(matrix)), 2)
        with self.assertRaisesRegex(IllConditioned, "violate"):
            eigenprojections(matrix, Tolerances(eps_verify=1e-30))


class TestCharSubspace(unittest.TestCase):
    """Tests for characteristic subspaces."""

    def test_jordan(self):
        block = char_subspace(JORDAN, 2)
        self.assertEqual(block.dim, 2)
        self.assertLess(
            subspace_distance(block, Subspace(np.eye(3)[:, :2])), 1e-10
        )
        single = char_subspace(JORDAN, 5 + 1e-12)
        self.assertLess(
            subspace_distance(single, Subspace(np.eye(3)[:, 2:])), 1e-10
        )

    def test_whole_space(self):
        self.assertEqual(char_subspace([[5, 1], [0, 5]], 5).dim, 2)

    def test_not_an_eigenvalue(self):
        with self.assertRaises(NotAnEigenvalue):
            char_subspace(JORDAN, 3)


class TestJordanChevalley(unittest.TestCase):
    """Tests for the Jordan-Chevalley decomposition."""

    def test_jordan_block(self):
        decomposition = jordan_chevalley([[5, 1], [0, 5]])
        np.testing.assert_allclose(decomposition.D, 5 * np.eye(2), atol=1e-10)
        np.testing.assert_allclose(
            decomposition.N, [[0, 1], [0, 0]], atol=1e-10
        )

    def test_conjugated_jordan(self):
        S = similarity(2, 3)
        inverse = np.linalg.inv(S)
        matrix = S @ JORDAN @ inverse
        decomposition = jordan_chevalley(matrix)
        scale = np.linalg.norm(matrix, 2)
        self.assertLess(
            np.linalg.norm(decomposition.D - S @ np.diag([2, 2, 5]) @ inverse, 2),
            1e-8 * scale
        )
        for name, value in decomposition.residuals(matrix).items():
            self.assertLess(value, 1e-8, name)
        np.testing.assert_allclose(
            decomposition.eigenvalues.values, [2, 2, 5], atol=1e-8
        )

    def test_triple_jordan_block(self):
        shift = np.eye(3, k=1)
        decomposition = jordan_chevalley(2 * np.eye(3) + shift)
        np.testing.assert_allclose(decomposition.D, 2 * np.eye(3), atol=1e-10)
        np.testing.assert_allclose(decomposition.N, shift, atol=1e-10)
        np.testing.assert_allclose(
            decomposition.eigenvalues.values, [2, 2, 2], atol=1e-10
        )
        projections = eigenprojections(np.diag([1, 1, 1, 5]))
        self.assertEqual(projections.multiplicities, [3, 1])
        np.testing.assert_allclose(
            projections.projections[0], np.diag([1, 1, 1, 0]), atol=1e-10
        )

    def test_repeated_eigenvalues(self):
        for seed in range(200):
            rng = make_rng(seed)
            matrix, n = engineered_matrix(rng)
            decomposition = jordan_chevalley(matrix)
            for name, value in decomposition.residuals(matrix).items():
                self.assertLess(value, 1e-8, f'{name} (seed {seed})')
            self.assertTrue(is_diagonalizable(decomposition.D), seed)
            if seed < 50:
                T = np.eye(n) + 0.3 * (
                    rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                )
                inverse = np.linalg.inv(T)
                moved = jordan_chevalley(T @ matrix @ inverse)
                scale = max(1.0, np.linalg.norm(matrix, 2))
                self.assertLess(
                    np.linalg.norm(
                        moved.D - T @ decomposition.D @ inverse, 2
                    ) / scale,
                    1e-8, seed
                )

    def test_diagonalizable_has_zero_nilpotent_part(self):
        matrix = np.array([[2, 1], [1, 2]])
        decomposition = jordan_chevalley(matrix)
        np.testing.assert_allclose(decomposition.D, matrix, atol=1e-10)
        np.testing.assert_allclose(decomposition.N, 0, atol=1e-10)


if __name__ == '__main__':
    unittest.main()
