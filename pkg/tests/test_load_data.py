"""This module contains tests for reading configuration and matrix files.
"""

import os
import tempfile
import unittest

import numpy as np

from pencillab.errors import MatrixFileError
from pencillab.gallery import tu_pair
from pencillab.load_data import (
    DEFAULT_CONFIG_DATA, extract_config_data, load_json, matrix_record,
    parse_matrix, read_matrix_file, write_matrix_file
)
from pencillab.numcore import Tolerances

TEST_DATA_DIR = os.path.join(os.path.dirname(__file__), 'test_data')
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class TestConfig(unittest.TestCase):
    """Tests for configuration loading."""

    def test_shipped_config_matches_default(self):
        config = load_json(os.path.join(ROOT_DIR, 'config.json'))
        self.assertEqual(config, DEFAULT_CONFIG_DATA)

    def test_extract_config_data(self):
        params = extract_config_data(DEFAULT_CONFIG_DATA)
        self.assertEqual(params['tolerances'], Tolerances())
        self.assertEqual(params['seed'], 0)
        self.assertEqual(params['windows']['two_sided4'], (-3, 3))
        self.assertEqual(params['windows']['local_commute'], (-1.0, 1.0))
        self.assertEqual(params['expm_norm_bound'], 1000.0)


class TestMatrixFiles(unittest.TestCase):
    """Tests for the JSON matrix format."""

    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.folder.name, 'matrices.json')

    def tearDown(self):
        self.folder.cleanup()

    def _write_text(self, text):
        with open(self.path, 'w', encoding='utf-8') as f:
            f.write(text)

    def test_read_scaled_file(self):
        matrices = read_matrix_file(os.path.join(TEST_DATA_DIR, 'tu.json'))
        A, B = tu_pair()
        self.assertEqual(list(matrices), ['A', 'B'])
        self.assertEqual(matrices['A'].tobytes(), A.tobytes())
        self.assertEqual(matrices['B'].tobytes(), B.tobytes())

    def test_default_scale(self):
        matrices = read_matrix_file(os.path.join(TEST_DATA_DIR, 'shift.json'))
        np.testing.assert_array_equal(matrices['N'], [[0, 1], [0, 0]])
        np.testing.assert_array_equal(matrices['M'], [[0, 0], [1, 0]])

    def test_round_trip_is_bit_exact(self):
        rng = np.random.default_rng(3)
        generic = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        generic[0, 0] = complex(-0.0, 0.0)
        generic[1, 1] = complex(0.0, -0.0)
        A, B = tu_pair()
        write_matrix_file(self.path, {'A': A, 'B': B, 'generic': generic})
        matrices = read_matrix_file(self.path)
        for name, matrix in (('A', A), ('B', B), ('generic', generic)):
            self.assertEqual(matrices[name].tobytes(), matrix.tobytes(), name)

    def test_matrix_record_scale(self):
        A, _ = tu_pair()
        record = matrix_record(A)
        self.assertEqual(record['scale'], '2pi_i')
        self.assertEqual(record['entries'][4], [2, 0])
        self.assertEqual(matrix_record(np.eye(2) * 0.5)['scale'], '1')

    def test_parse_errors(self):
        bad_records = [
            {'entries': [[1, 0]]},
            {'n': 2, 'entries': [[1, 0]]},
            {'n': 1, 'entries': [[1, 0, 0]]},
            {'n': 1, 'scale': 'pi', 'entries': [[1, 0]]},
            {'n': 1, 'entries': [[float('nan'), 0]]},
            {'n': 1, 'entries': [['one', 0]]},
            {'n': 0, 'entries': []},
        ]
        for record in bad_records:
            with self.assertRaises(MatrixFileError, msg=str(record)):
                parse_matrix('X', record)

    def test_file_errors(self):
        with self.assertRaises(MatrixFileError):
            read_matrix_file(os.path.join(TEST_DATA_DIR, 'duplicate.json'))
        for text in ('', '{"A": ', '{}', '[1, 2]'):
            self._write_text(text)
            with self.assertRaises(MatrixFileError, msg=repr(text)):
                read_matrix_file(self.path)
        with self.assertRaises(OSError):
            read_matrix_file(os.path.join(self.folder.name, 'missing.json'))

    def test_error_is_value_error(self):
        self.assertTrue(issubclass(MatrixFileError, ValueError))


if __name__ == '__main__':
    unittest.main()
