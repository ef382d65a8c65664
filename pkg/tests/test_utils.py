"""This module contains tests for the utils module.
"""

import unittest

import numpy as np

from pencillab.utils import check_positive
from pencillab.utils import cartesian_product
from pencillab.utils import integer_window
from pencillab.utils import make_rng
from pencillab.utils import random_disk_points

class TestUtils(unittest.TestCase):
    """Tests for the utils module.
    """

    def test_check_positive(self):
        """Test the pencillab.utils.check_positive function.
        """
        check_positive(1, 0.5)
        with self.assertRaises(ValueError):
            check_positive(-0.01)
        with self.assertRaises(ValueError):
            check_positive(1, 0)

    def test_cartestian(self):
        """Test the pencillab.utils.cartestian function.
        """
        self.assertListEqual(
            cartesian_product([1, 2], [3, 4]),
            [(1, 3), (1, 4), (2, 3), (2, 4)]
        )
        self.assertListEqual(
            cartesian_product([1], [3, 4]),
            [(1, 3), (1, 4)]
        )
        self.assertListEqual(
            cartesian_product([1, 2]),
            [(1,), (2,)]
        )

    def test_integer_window(self):
        """Test the pencillab.utils.integer_window function.
        """
        self.assertListEqual(integer_window((-2, 1)), [-2, -1, 0, 1])
        self.assertListEqual(integer_window(3), [3])
        self.assertListEqual(integer_window((0.0, 2.0)), [0, 1, 2])
        with self.assertRaises(ValueError):
            integer_window((2, 1))

    def test_random_disk_points(self):
        """Test the pencillab.utils.random_disk_points function.
        """
        points = random_disk_points(make_rng(3), 500, 2.0, 1 + 1j)
        self.assertEqual(points.shape, (500,))
        self.assertTrue(np.all(np.abs(points - (1 + 1j)) <= 2.0))
        np.testing.assert_array_equal(
            points, random_disk_points(make_rng(3), 500, 2.0, 1 + 1j)
        )
        self.assertFalse(np.array_equal(
            points, random_disk_points(make_rng(4), 500, 2.0, 1 + 1j)
        ))

if __name__ == '__main__':
    unittest.main()
