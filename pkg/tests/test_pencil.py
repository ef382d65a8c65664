"""This module contains tests for the pencil module.
"""

import unittest
from fractions import Fraction

import numpy as np

from pencillab.errors import DegenerateDiscriminant
from pencillab.numcore import TWO_PI_I, multiset_match
from pencillab.pencil import (
    AffineFamily, Pencil, branch_structure, collision_points,
    discriminant_coefficients, eigenprojection_trajectory,
    exceptional_integers, profile, property_L_pair, property_L_span,
    regular_points, sample_spectra, track_eigenvalues
)
from pencillab.gallery import commuting_pair, triangularizable_pair
from pencillab.utils import make_rng

TU_A = TWO_PI_I * np.diag([1, 2, 0])
TU_B = TWO_PI_I * np.array([[2, 1, 1], [1, 3, -2], [1, 1, 0]])
SHIFT = np.array([[0, 1], [0, 0]], dtype=np.complex128)
CROSSING = Pencil(np.diag([0, 1]), np.diag([1, -1]))


def diagonal_pair(rng, n):
    """Simultaneously diagonalizable ``A`` and ``B`` with their
    eigenvalues in matching order."""
    S = 3 * np.eye(n) + rng.normal(size=(n, n))
    inverse = np.linalg.inv(S)
    a = 2 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    b = 2 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    return S @ np.diag(a) @ inverse, S @ np.diag(b) @ inverse, a, b


class TestPencil(unittest.TestCase):
    """Tests for the pencil type and sampling."""

    def test_validation(self):
        with self.assertRaises(ValueError):
            Pencil(np.eye(2), np.eye(3))
        pencil = Pencil(np.eye(2), SHIFT)
        self.assertEqual(pencil.n, 2)
        np.testing.assert_array_equal(pencil.at(2), [[1, 2], [0, 1]])

    def test_threaded_sampling_keeps_order(self):
        pencil = Pencil(TU_B, TU_A)
        zs = [0.5, 1j, -2.5, 3 + 1j]
        serial = sample_spectra(pencil, zs)
        threaded = sample_spectra(pencil, zs, workers=3)
        for first, second in zip(serial, threaded):
            np.testing.assert_array_equal(first.values, second.values)


class TestProfile(unittest.TestCase):
    """Tests for generic counts and exceptional points."""

    def test_crossing_diagonal_pencil(self):
        result = profile(CROSSING)
        self.assertEqual(result.p, 2)
        self.assertFalse(result.degenerate)
        self.assertEqual(len(result.exceptional_points), 1)
        self.assertAlmostEqual(result.exceptional_points[0], 0.5, places=6)
        self.assertGreaterEqual(result.samples_used, 20)

    def test_unit_exponential_pair(self):
        result = profile(Pencil(TU_B, TU_A))
        self.assertEqual(result.p, 3)
        np.testing.assert_allclose(
            result.exceptional_points, [-2, -1.5, -1], atol=1e-6
        )

    def test_shift_pencil(self):
        pencil = Pencil(SHIFT, SHIFT.T)
        np.testing.assert_allclose(
            discriminant_coefficients(pencil), [0, 4], atol=1e-10
        )
        result = profile(pencil)
        self.assertEqual(result.p, 2)
        np.testing.assert_allclose(result.exceptional_points, [0], atol=1e-6)

    def test_degenerate_pencil(self):
        result = profile(Pencil(np.eye(2), np.eye(2)))
        self.assertEqual(result.p, 1)
        self.assertTrue(result.degenerate)
        self.assertEqual(result.exceptional_points, [])
        with self.assertRaises(DegenerateDiscriminant):
            discriminant_coefficients(Pencil(np.eye(2), np.eye(2)))

    def test_profile_is_deterministic(self):
        first = profile(Pencil(TU_B, TU_A), seed=3)
        second = profile(Pencil(TU_B, TU_A), seed=3)
        self.assertEqual(first.exceptional_points, second.exceptional_points)

    def test_regular_points(self):
        pencil = Pencil(TU_B, TU_A)
        generic = profile(pencil)
        points = regular_points(pencil, generic, 4, seed=1)
        self.assertEqual(len(points), 4)
        for z in points:
            for e in generic.exceptional_points:
                self.assertGreater(abs(z - e), 1e-6)


class TestBranches(unittest.TestCase):
    """Tests for eigenvalue tracking and monodromy."""

    def test_tracking_is_continuous(self):
        zs = np.linspace(0, 0.4, 41)
        track = track_eigenvalues(CROSSING, zs)
        steps = np.abs(np.diff(track, axis=0))
        self.assertLess(steps.max(), 0.05)
        np.testing.assert_allclose(
            sorted(track[-1], key=lambda v: v.real), [0.4, 0.6], atol=1e-10
        )

    def test_square_root_branch(self):
        structure = branch_structure(Pencil(SHIFT, SHIFT.T), 0)
        self.assertEqual(structure.q, 1)
        self.assertEqual(structure.lengths, [2])
        cycle = structure.cycles[0]
        self.assertAlmostEqual(cycle.value, 0, places=6)
        self.assertEqual(cycle.exponent, Fraction(1, 2))
        self.assertAlmostEqual(abs(cycle.leading_term[0]), 1.0, places=4)

    def test_crossings_do_not_branch(self):
        structure = branch_structure(Pencil(TU_B, TU_A), -1.5)
        self.assertEqual(structure.lengths, [1, 1, 1])
        structure = branch_structure(Pencil(TU_B, TU_A), -1)
        self.assertEqual(structure.q, 3)
        self.assertEqual(structure.lengths, [1, 1, 1])
        structure = branch_structure(CROSSING, 0.5)
        self.assertEqual(structure.lengths, [1, 1])
        for cycle in structure.cycles:
            self.assertEqual(cycle.exponent, Fraction(1))

    def test_diagonalizable_crossings(self):
        for seed in range(20):
            rng = make_rng(seed)
            A, B, a, b = diagonal_pair(rng, 3)
            self.assertIsNotNone(property_L_pair(A, B), seed)
            pencil = Pencil(A, B)
            for i in range(3):
                for j in range(i + 1, 3):
                    center = -(a[i] - a[j]) / (b[i] - b[j])
                    structure = branch_structure(pencil, center)
                    self.assertEqual(structure.lengths, [1, 1, 1], seed)


class TestPropertyL(unittest.TestCase):
    """Tests for affine family certification."""

    def test_unit_exponential_pair(self):
        family = property_L_pair(TU_A, TU_B)
        self.assertIsNotNone(family)
        expected = np.array([0, TWO_PI_I * (1 + 2j), TWO_PI_I * (2 + 3j)])
        point = 1j
        self.assertIsNotNone(
            multiset_match(family.evaluate(point), expected)
        )

    def test_shift_pair(self):
        self.assertIsNone(property_L_pair(SHIFT, SHIFT.T))

    def test_commuting_and_triangularizable(self):
        self.assertIsNotNone(property_L_pair(*commuting_pair(0)))
        self.assertIsNotNone(property_L_pair(*triangularizable_pair(0)))

    def test_discrimination(self):
        for seed in range(50):
            n = 2 + seed % 3
            self.assertIsNotNone(
                property_L_pair(*triangularizable_pair(seed, n)), seed
            )
        A, B = np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])
        self.assertIsNone(property_L_pair(A, B))
        for seed in range(20):
            rng = make_rng(seed)
            n = 2 + seed % 2
            first = np.zeros((n, n), dtype=np.complex128)
            second = np.zeros((n, n), dtype=np.complex128)
            first[:2, :2], second[:2, :2] = A, B
            first += 0.1 * rng.normal(size=(n, n))
            second += 0.1 * rng.normal(size=(n, n))
            self.assertIsNone(property_L_pair(first, second), seed)

    def test_span(self):
        first, second = np.diag([1, 2]), np.diag([3, 4])
        family = property_L_span([first, second, first + second])
        self.assertIsNotNone(family)
        self.assertEqual(family.mode, 'linear')
        self.assertEqual(len(family.basis), 2)
        point = (0.5, -2.0)
        matrix = sum(c * m for c, m in zip(point, family.basis))
        self.assertIsNotNone(
            multiset_match(family.evaluate(point), np.diag(matrix))
        )
        self.assertIsNotNone(property_L_span([TU_A, TU_B]))
        self.assertIsNone(property_L_span([SHIFT, SHIFT.T]))
        with self.assertRaises(ValueError):
            property_L_span([])


class TestTrajectories(unittest.TestCase):
    """Tests for eigenprojections along regular points."""

    def test_commuting_pair_has_constant_projections(self):
        pencil = Pencil(np.diag([1, 2, 3]), np.diag([0, 1, 5]))
        report = eigenprojection_trajectory(pencil, [0.3, 1.7 + 0.2j, -0.8j])
        self.assertLessEqual(report.max_deviation, 1e-9)
        self.assertEqual(len(report.sets), 3)
        np.testing.assert_allclose(
            report.projection(2, 0), report.projection(0, 0), atol=1e-9
        )

    def test_non_commuting_pair_moves(self):
        pencil = Pencil(np.diag([1, 2]), np.array([[0, 1], [1, 0]]))
        report = eigenprojection_trajectory(pencil, [0.1, 1.0])
        self.assertGreater(report.max_deviation, 0.1)

    def test_diagonalizable_commuting_pairs(self):
        for seed in range(50):
            rng = make_rng(seed)
            n = int(rng.integers(2, 5))
            A, B, a, b = diagonal_pair(rng, n)
            points = []
            while len(points) < 10:
                z = complex(2 * rng.uniform(-1, 1), 2 * rng.uniform(-1, 1))
                values = a + z * b
                gaps = np.abs(values[:, None] - values[None, :])
                if gaps[~np.eye(n, dtype=bool)].min() > 0.5:
                    points.append(z)
            report = eigenprojection_trajectory(Pencil(A, B), points)
            self.assertLessEqual(report.max_deviation, 1e-8, seed)

    def test_shift_pencil_moves(self):
        report = eigenprojection_trajectory(Pencil(SHIFT, SHIFT.T), [1, 4])
        self.assertGreater(report.max_deviation, 0.1)


class TestCollisions(unittest.TestCase):
    """Tests for collision points of affine families."""

    def test_exceptional_integers(self):
        family = AffineFamily([
            [0, 0],
            [TWO_PI_I * 2, TWO_PI_I],
            [TWO_PI_I * 3, TWO_PI_I * 2],
        ])
        np.testing.assert_allclose(
            collision_points(family), [-2, -1.5, -1], atol=1e-12
        )
        self.assertEqual(exceptional_integers(family), [-2, -1])
        self.assertEqual(
            exceptional_integers(AffineFamily([[0, 1], [1, -1]])), []
        )

    def test_affine_family_validation(self):
        with self.assertRaises(ValueError):
            AffineFamily([[0, 1, 2]])
        with self.assertRaises(ValueError):
            AffineFamily([[0, 1]], mode='quadratic')
        with self.assertRaises(ValueError):
            collision_points(AffineFamily([[1, 2]], mode='linear'))


if __name__ == '__main__':
    unittest.main()
