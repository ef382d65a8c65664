"""This module contains tests for the gallery of reference pairs.
"""

import unittest

import numpy as np

from pencillab.gallery import (
    CASES, commuting_pair, gallery, run_gallery, triangularizable_pair,
    verify_case
)


class TestGallery(unittest.TestCase):
    """Tests for the reference pairs and their claims."""

    def test_cases(self):
        cases = gallery()
        self.assertEqual(sorted(cases), sorted(CASES))
        for case in cases.values():
            self.assertEqual(case.A.shape, case.B.shape)
            self.assertTrue(case.claims)

    def test_seeded_cases_are_reproducible(self):
        for first, second in zip(commuting_pair(4), commuting_pair(4)):
            np.testing.assert_array_equal(first, second)
        for first, second in zip(
            triangularizable_pair(4), triangularizable_pair(4)
        ):
            np.testing.assert_array_equal(first, second)

    def test_every_claim_holds(self):
        claims = run_gallery()
        self.assertEqual(
            list(claims.columns),
            ['case', 'claim', 'expected', 'observed', 'passed']
        )
        failed = claims[~claims['passed']]
        self.assertTrue(claims['passed'].all(), failed.to_string())
        self.assertEqual(set(claims['case']), set(CASES))

    def test_single_case(self):
        claims = verify_case(gallery()['shift'])
        self.assertEqual(len(claims), 3)
        self.assertTrue(claims['passed'].all())
        self.assertEqual(len(run_gallery('tu')), len(gallery()['tu'].claims))

    def test_unknown_case(self):
        with self.assertRaises(KeyError):
            run_gallery('hilbert')


if __name__ == '__main__':
    unittest.main()
