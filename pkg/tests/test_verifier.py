"""This module contains tests for the verifier module.
"""

import unittest

import numpy as np

from pencillab.errors import AmbiguousSeparation, HypothesisViolated, Overflow
from pencillab.gallery import semigroup_pair, shift_pair, tu_pair
from pencillab.numcore import TWO_PI_I, Subspace, spectrum, subspace_distance
from pencillab.utils import make_rng
from pencillab.verifier import (
    ConditionKind, check_condition, check_condition6, check_eq7,
    check_integral_spectrum, check_refined_motzkin_taussky,
    check_semigroup_homomorphism, commutator, condition6_scaling,
    eq7_residuals, find_injective_k, find_splitting, gamma_injectivity,
    gamma_map, rescale_for_condition6, shift_to_integral,
    subspace_intersection
)

LOG2 = np.log(2.0)
LOG3 = np.log(3.0)


class TestConditions(unittest.TestCase):
    """Tests for exponential identities on windows."""

    def test_commutator(self):
        A, B = tu_pair()
        bracket, norm = commutator(A, B)
        self.assertEqual(bracket.shape, (3, 3))
        self.assertGreater(norm, 0.5)
        self.assertEqual(commutator(np.diag([1, 2]), np.diag([3, 4]))[1], 0.0)
        with self.assertRaises(ValueError):
            commutator(np.eye(2), np.eye(3))

    def test_one_sided_window_holds(self):
        A, B = tu_pair()
        report = check_condition(A, B, ConditionKind.BOURGEOIS3, (0, 5))
        self.assertTrue(report.holds)
        self.assertEqual(report.violations, [])
        self.assertEqual(len(report.table), 6)
        self.assertTrue(report.table['holds'].all())

    def test_two_sided_window_fails(self):
        A, B = tu_pair()
        report = check_condition(A, B, 'two_sided4', (-2, 2))
        self.assertFalse(report.holds)
        self.assertEqual(len(report.table), 25)
        self.assertIn((-1, 1), [point for point, _ in report.violations])

    def test_threads_keep_lattice_order(self):
        A, B = tu_pair()
        serial = check_condition(A, B, ConditionKind.WINDOW, (-1, 1))
        threaded = check_condition(
            A, B, ConditionKind.WINDOW, (-1, 1), workers=3
        )
        self.assertEqual(
            list(serial.table['point']), list(threaded.table['point'])
        )
        np.testing.assert_array_equal(
            serial.table['residual'], threaded.table['residual']
        )

    def test_local_conditions(self):
        A, B = np.diag([1.0, 2.0]), np.diag([0.5, -1.0])
        for kind in (ConditionKind.LOCAL_COMMUTE, ConditionKind.LOCAL_PRODUCT):
            report = check_condition(A, B, kind)
            self.assertTrue(report.holds)
            self.assertEqual(len(report.table), 21)
        A, B = shift_pair()
        report = check_condition(A, B, ConditionKind.LOCAL_COMMUTE)
        self.assertFalse(report.holds)

    def test_invalid_requests(self):
        A, B = tu_pair()
        with self.assertRaises(ValueError):
            check_condition(A, B, ConditionKind.SEMIGROUP)
        with self.assertRaises(ValueError):
            check_condition(A, B, 'three_sided')
        with self.assertRaises(Overflow):
            check_condition(
                np.eye(2), np.eye(2), ConditionKind.BOURGEOIS3, (0, 3),
                norm_bound=1.0
            )

    def test_semigroup_homomorphism(self):
        A, B = semigroup_pair()
        report = check_semigroup_homomorphism([A, B], depth=3)
        self.assertTrue(report.holds)
        self.assertEqual(len(report.table), 16)
        self.assertFalse(
            check_condition(A, B, ConditionKind.TWO_SIDED4, (-1, 1)).holds
        )
        for pair in ((A, B), tu_pair()):
            report = check_condition(*pair, ConditionKind.TWO_SIDED4, (-2, 2))
            self.assertTrue(report.violations)
            for point, _ in report.violations:
                self.assertLess(min(point), 0, point)

    def test_integral_spectrum(self):
        holds, table = check_integral_spectrum(
            np.diag([1, 2]), np.diag([0, 3]), (-1, 1)
        )
        self.assertTrue(holds)
        self.assertEqual(list(table.columns),
                         ['k', 'l', 'diagonalizable', 'integral'])
        holds, _ = check_integral_spectrum(*shift_pair(), (-2, 2))
        self.assertFalse(holds)


class TestGamma(unittest.TestCase):
    """Tests for the maps on exponential eigenvalues."""

    def test_injective_map(self):
        A, B = np.diag([0, LOG2]), np.diag([0, LOG3])
        gamma = gamma_map(A, B, 1)
        self.assertEqual(len(gamma.table), 4)
        np.testing.assert_allclose(
            sorted(gamma.images.real), [1, 2, 3, 6], atol=1e-12
        )
        self.assertTrue(gamma_injectivity(A, B, 1))
        self.assertEqual(find_injective_k(A, B), 1)

    def test_first_injective_power(self):
        A = B = np.diag([0, LOG2])
        self.assertFalse(gamma_injectivity(A, B, 1))
        self.assertEqual(find_injective_k(A, B), 2)

    def test_ambiguous_separation(self):
        A = np.diag([0, LOG2])
        B = np.diag([0, LOG2 + np.log1p(1e-6)])
        with self.assertRaises(AmbiguousSeparation):
            gamma_injectivity(A, B, 1)


class TestCondition6(unittest.TestCase):
    """Tests for rational eigenvalue differences."""

    def test_check(self):
        self.assertFalse(check_condition6(np.diag([0, 1j * np.pi])))
        self.assertTrue(check_condition6(TWO_PI_I * np.diag([0, 1, 3])))
        self.assertTrue(check_condition6(np.diag([0, 1])))

    def test_scaling(self):
        A = TWO_PI_I * np.diag([0, 1 / 2, 1 / 3])
        self.assertEqual(condition6_scaling(A), 6)
        p, scaled = rescale_for_condition6(A)
        self.assertEqual(p, 6)
        self.assertTrue(check_condition6(scaled))
        self.assertEqual(condition6_scaling(np.diag([0, 1])), 1)

    def test_shift_to_integral(self):
        A = np.diag([1, 1 + TWO_PI_I])
        B = np.diag([0.5, 0.5 - 2 * TWO_PI_I])
        shifts = shift_to_integral(A, B)
        self.assertIsNotNone(shifts)
        for matrix, shift in zip((A, B), shifts):
            ratios = spectrum(matrix - shift * np.eye(2)).values / TWO_PI_I
            np.testing.assert_allclose(
                ratios, np.round(ratios.real), atol=1e-9
            )
        self.assertIsNone(shift_to_integral(np.diag([0, 1]), np.eye(2)))


class TestSubspaceConditions(unittest.TestCase):
    """Tests for characteristic subspace identities and splittings."""

    def test_eq7_holds(self):
        A, B = np.diag([0, LOG2]), np.diag([0, LOG3])
        table = eq7_residuals(A, B)
        self.assertEqual(len(table), 2)
        self.assertTrue((table['left_dim'] == table['right_dim']).all())
        self.assertTrue(check_eq7(A, B))
        self.assertTrue(check_eq7(*tu_pair()))

    def test_eq7_on_commuting_pairs(self):
        for seed in range(100):
            rng = make_rng(seed)
            n = int(rng.integers(2, 5))
            S = 3 * np.eye(n) + rng.normal(size=(n, n))
            inverse = np.linalg.inv(S)
            a, b = 0.5 * (
                rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
            )
            A, B = S @ np.diag(a) @ inverse, S @ np.diag(b) @ inverse
            table = eq7_residuals(A, B)
            self.assertLessEqual(table['residual'].max(), 1e-8, seed)
            self.assertTrue((table['left_dim'] == table['right_dim']).all())

    def test_eq7_hypotheses(self):
        with self.assertRaises(HypothesisViolated):
            eq7_residuals(*shift_pair())
        A = np.diag([0, LOG2])
        with self.assertRaises(HypothesisViolated):
            eq7_residuals(A, A)

    def test_subspace_intersection(self):
        first = Subspace(np.eye(3)[:, :2])
        second = Subspace(np.eye(3)[:, 1:])
        meet = subspace_intersection(first, second)
        self.assertEqual(meet.dim, 1)
        np.testing.assert_allclose(
            meet.projector(), np.diag([0, 1, 0]), atol=1e-12
        )
        self.assertEqual(
            subspace_intersection(first, Subspace.zero(3)).dim, 0
        )

    def test_find_splitting(self):
        splitting = find_splitting(np.diag([1, 2]), np.diag([3, 4]))
        self.assertIsNotNone(splitting)
        self.assertEqual(splitting.F.dim + splitting.G.dim, 2)
        self.assertIsNone(find_splitting(*semigroup_pair()))

    def test_splitting_of_block_diagonal_pair(self):
        A = np.zeros((3, 3), dtype=np.complex128)
        B = np.zeros((3, 3), dtype=np.complex128)
        A[:2, :2], B[:2, :2] = [[0, 1], [0, 0]], [[0, 0], [1, 0]]
        A[2, 2], B[2, 2] = 5, 7
        splitting = find_splitting(A, B)
        self.assertIsNotNone(splitting)
        parts = sorted((splitting.F, splitting.G), key=lambda s: s.dim)
        self.assertEqual([s.dim for s in parts], [1, 2])
        self.assertLess(
            subspace_distance(parts[1], Subspace(np.eye(3)[:, :2])), 1e-10
        )
        jordan = np.eye(3, k=1)
        self.assertIsNone(find_splitting(jordan, jordan))

    def test_refined_motzkin_taussky(self):
        report = check_refined_motzkin_taussky(
            np.diag([1, 2]), np.diag([3, 5])
        )
        self.assertTrue(report.hypotheses_hold)
        self.assertTrue(report.commutes)
        report = check_refined_motzkin_taussky(*tu_pair())
        self.assertTrue(report.property_l)
        self.assertTrue(report.b_diagonalizable)
        self.assertFalse(report.commutes)
        self.assertFalse(report.hypotheses_hold)


if __name__ == '__main__':
    unittest.main()
