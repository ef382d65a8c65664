"""This module contains tests for report rendering and trajectory output.
"""

import json
import unittest
from fractions import Fraction

import numpy as np
import pandas as pd

from pencillab.numcore import Tolerances
from pencillab.output_data import (
    Report, create_data_array, split_complex_columns, to_jsonable,
    trajectory_frame
)


class TestOutputData(unittest.TestCase):
    """Tests for report rendering."""

    def test_to_jsonable(self):
        value = {
            'z': 1 - 2j, 'q': Fraction(1, 2), 'flag': np.bool_(True),
            'values': np.array([1.0, 2.0]), 'point': (1, -1),
        }
        self.assertEqual(to_jsonable(value), {
            'z': [1.0, -2.0], 'q': '1/2', 'flag': True,
            'values': [1.0, 2.0], 'point': [1, -1],
        })

    def test_split_complex_columns(self):
        df = pd.DataFrame({
            'value': [1 + 1j, 2 - 1j], 'point': [(0, 1), (1, 1)],
            'residual': [0.5, 0.25],
        })
        split = split_complex_columns(df)
        self.assertEqual(
            list(split.columns),
            ['value_re', 'value_im', 'point', 'residual']
        )
        self.assertEqual(list(split['value_im']), [1.0, -1.0])
        self.assertEqual(list(split['point']), ['(0, 1)', '(1, 1)'])

    def test_report_renderings_agree(self):
        report = Report('pencillab gallery', Tolerances(), 0)
        report.verdicts = {'all_claims_hold': True, 'commuting': False}
        report.tables = {'claims': pd.DataFrame({'claim': ['a'], 'x': [1j]})}
        data = json.loads(report.to_json())
        self.assertEqual(data['verdicts'], report.verdicts)
        self.assertEqual(data['tables']['claims'], [{'claim': 'a', 'x': [0.0, 1.0]}])
        self.assertEqual(data['tolerances']['eps_verify'], 1e-9)
        text = report.to_text()
        self.assertIn('  all_claims_hold: true', text)
        self.assertIn('  commuting: false', text)

    def test_trajectory_frame(self):
        zs = np.array([1, 1j])
        track = np.array([[1, -1], [1j, -1j]])
        frame = trajectory_frame(create_data_array(track, zs))
        self.assertEqual(len(frame), 4)
        row = frame[(frame['branch_id'] == 1) & (frame['z_im'] == 1.0)]
        self.assertEqual(float(row['lambda_im'].iloc[0]), -1.0)
        self.assertEqual(float(row['z_re'].iloc[0]), 0.0)


if __name__ == '__main__':
    unittest.main()
