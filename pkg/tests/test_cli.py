"""This module contains tests for the command line.
"""

import argparse
import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import pandas as pd

from pencillab.cli import (
    EXIT_ASSERTION, EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, main
)
from pencillab.load_data import write_matrix_file
from pencillab.set_up import (
    SEED_VARIABLE, load_parameters, parse_bool, parse_cli_arguments,
    parse_complex
)

TEST_DATA_DIR = os.path.join(os.path.dirname(__file__), 'test_data')
QUIET = ['--log-folder', 'none']


def run(argv):
    """Run the command line and return its exit code and standard output."""
    output = io.StringIO()
    with contextlib.redirect_stdout(output):
        code = main(list(argv) + QUIET)
    return code, output.getvalue()


class TestSetUp(unittest.TestCase):
    """Tests for argument parsing and parameters."""

    def test_parse_values(self):
        self.assertTrue(parse_bool('True'))
        self.assertFalse(parse_bool('no'))
        with self.assertRaises(argparse.ArgumentTypeError):
            parse_bool('maybe')
        self.assertEqual(parse_complex('-1.5+2j'), complex(-1.5, 2))
        with self.assertRaises(argparse.ArgumentTypeError):
            parse_complex('one')

    def test_seed_precedence(self):
        args = parse_cli_arguments(['gallery'])
        with mock.patch.dict(os.environ, {SEED_VARIABLE: '7'}):
            self.assertEqual(load_parameters(None, args)['seed'], 7)
            args = parse_cli_arguments(['gallery', '--seed', '3'])
            self.assertEqual(load_parameters(None, args)['seed'], 3)
        with mock.patch.dict(os.environ, {}, clear=True):
            args = parse_cli_arguments(['gallery'])
            self.assertEqual(load_parameters(None, args)['seed'], 0)

    def test_overrides(self):
        args = parse_cli_arguments(
            ['gallery', '--eps-verify', '1e-6', '--max-iter', '50',
             '--log-folder', 'none']
        )
        params = load_parameters(None, args)
        self.assertEqual(params['tolerances'].eps_verify, 1e-6)
        self.assertEqual(params['tolerances'].max_iter, 50)
        self.assertEqual(params['tolerances'].eps_root, 1e-12)
        self.assertIsNone(params['log_folder'])


class TestCommands(unittest.TestCase):
    """Tests for the subcommands and their exit codes."""

    def setUp(self):
        self.folder = tempfile.TemporaryDirectory()
        self.gallery_file = os.path.join(self.folder.name, 'gallery.json')
        code, _ = run(['write-gallery', self.gallery_file])
        self.assertEqual(code, EXIT_OK)

    def tearDown(self):
        self.folder.cleanup()

    def path(self, name):
        return os.path.join(self.folder.name, name)

    def test_write_gallery_round_trip(self):
        code, output = run(
            ['write-gallery', self.path('again.json'), '--format', 'json']
        )
        self.assertEqual(code, EXIT_OK)
        report = json.loads(output)
        self.assertTrue(report['verdicts']['round_trip'])
        self.assertIn('tu_A', report['details']['matrices'])

    def test_check_pair_holds(self):
        code, output = run([
            'check-pair', self.gallery_file, 'tu_A', 'tu_B',
            '--kind', 'bourgeois3', '--window', '0', '5',
            '--assert-condition', 'true', '--assert-commuting', 'false',
            '--assert-property-l', 'true', '--format', 'json',
        ])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(output)
        self.assertEqual(
            report['verdicts'],
            {'condition': True, 'commuting': False, 'property_l': True}
        )
        self.assertEqual(len(report['tables']['residuals']), 6)
        self.assertEqual(report['seed'], 0)

    def test_check_pair_assertion_fails(self):
        code, output = run([
            'check-pair', self.gallery_file, 'tu_A', 'tu_B',
            '--window', '-2', '2', '--assert-condition', 'true',
        ])
        self.assertEqual(code, EXIT_ASSERTION)
        self.assertIn('condition: false', output)

    def test_input_errors(self):
        self.assertEqual(
            run(['check-pair', self.path('missing.json'), 'A', 'B'])[0],
            EXIT_INPUT
        )
        self.assertEqual(
            run(['check-pair', self.gallery_file, 'tu_A', 'nope'])[0],
            EXIT_INPUT
        )
        self.assertEqual(
            run(['check-pair', self.gallery_file, 'tu_A', 'shift_A'])[0],
            EXIT_INPUT
        )
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(run(['no-such-command'])[0], EXIT_INPUT)
        self.assertEqual(run(['gallery', '--case', 'hilbert'])[0], EXIT_INPUT)

    def test_numerical_error(self):
        big = self.path('big.json')
        write_matrix_file(big, {'A': 500 * np.eye(2), 'B': np.eye(2)})
        code, _ = run(['check-pair', big, 'A', 'B'])
        self.assertEqual(code, EXIT_NUMERICAL)

    def test_decompose(self):
        code, output = run([
            'decompose', self.gallery_file, 'tu_B', '--format', 'json'
        ])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(output)
        self.assertTrue(report['verdicts']['diagonalizable'])
        self.assertTrue(report['verdicts']['unit_exponential'])
        for row in report['tables']['residuals']:
            self.assertLess(row['residual'], 1e-8, row['identity'])

    def test_gallery_command(self):
        code, output = run(['gallery', '--case', 'shift', '--assert'])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('all_claims_hold: true', output)

    def test_pencil_scan_csv(self):
        csv_path = self.path('trajectory/shift.csv')
        excel_path = self.path('scan.xlsx')
        code, output = run([
            'pencil-scan', self.gallery_file, 'shift_A', 'shift_B',
            '--emit-csv', csv_path, '--points', '64',
            '--trajectory-points', '3', '--excel', excel_path,
            '--format', 'json',
        ])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(output)
        self.assertEqual(report['details']['p'], 2)
        self.assertTrue(report['verdicts']['generic_simple'])
        self.assertEqual(report['tables']['branches'][0]['length'], 2)
        frame = pd.read_csv(csv_path)
        self.assertEqual(
            list(frame.columns),
            ['z_re', 'z_im', 'branch_id', 'lambda_re', 'lambda_im']
        )
        self.assertEqual(len(frame), 65 * 2)
        self.assertTrue(os.path.exists(excel_path))

    def test_span(self):
        code, output = run([
            'span', self.gallery_file, 'commuting_A', 'commuting_B',
            '--assert-property-l', 'true', '--format', 'json',
        ])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(output)
        self.assertTrue(report['verdicts']['semigroup_homomorphism'])
        self.assertEqual(report['details']['dimension'], 2)

    def test_report_file(self):
        report_path = self.path('reports/gallery.json')
        code, _ = run(['gallery', '--case', 'shift', '--report', report_path])
        self.assertEqual(code, EXIT_OK)
        with open(report_path, encoding='utf-8') as f:
            report = json.load(f)
        self.assertIn('claims', report['tables'])


if __name__ == '__main__':
    unittest.main()
