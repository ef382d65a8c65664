#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains functions for loading configuration data and for
reading and writing matrix files.

A matrix file is a JSON object mapping unique names to matrices::

    {
        "A": {"n": 2, "scale": "2pi_i",
              "entries": [[0, 0], [0, 0], [0, 0], [1, 0]]}
    }

``entries`` lists the ``n * n`` entries row by row as ``[re, im]`` pairs.
With ``"scale": "2pi_i"`` every entry is multiplied by :math:`2i\\pi` on
load.
"""

import json
import logging
from typing import Any, Dict

import numpy as np

from pencillab.errors import MatrixFileError
from pencillab.numcore import TWO_PI_I, Tolerances

SCALES = ('1', '2pi_i')

# Same content as the shipped config.json.
DEFAULT_CONFIG_DATA = {
    'general_parameters': {
        'seed': 0, 'log_folder': 'log', 'output_folder': 'output'
    },
    'tolerance_parameters': {
        'eps_root': 1e-12, 'eps_rank': 1e-9, 'eps_cluster': 1e-7,
        'eps_verify': 1e-9, 'max_iter': 500
    },
    'analysis_parameters': {
        'expm_norm_bound': 1000.0,
        'windows': {
            'bourgeois3': [0, 6], 'two_sided4': [-3, 3], 'window': [-3, 3],
            'local_commute': [-1.0, 1.0], 'local_product': [-1.0, 1.0]
        },
        'qmax': 64, 'kmax': 16, 'profile_samples': 20, 'profile_radius': 10.0,
        'branch_radius': 0.01, 'branch_angles': 64, 'branch_retries': 5,
        'validation_points': 0, 'workers': 1
    }
}


def load_json(file_path : str) -> dict:
    """Load data from a JSON file.

    Parameters
    ----------
    file_path : str
        Path to the JSON file.

    Returns
    -------
    dict
        Dictionary containing data from the JSON file.
    """
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)


def extract_config_data(config_data : dict) -> Dict[str, Any]:
    """Extract the analysis parameters from configuration settings.

    Parameters
    ----------
    config_data : dict
        Content of ``config.json``.

    Returns
    -------
    Dict[str, Any]
        Flat parameter dictionary with a ``tolerances`` entry holding a
        :class:`pencillab.numcore.Tolerances`.
    """
    tolerance = config_data['tolerance_parameters']
    analysis = config_data['analysis_parameters']
    general = config_data['general_parameters']

    tolerances = Tolerances(
        eps_root=float(tolerance['eps_root']),
        eps_rank=float(tolerance['eps_rank']),
        eps_cluster=float(tolerance['eps_cluster']),
        eps_verify=float(tolerance['eps_verify']),
        max_iter=int(tolerance['max_iter'])
    )
    required_config_data = {
        'tolerances': tolerances,
        'seed': int(general['seed']),
        'log_folder': general['log_folder'],
        'output_folder': general['output_folder'],
        'expm_norm_bound': float(analysis['expm_norm_bound']),
        'windows': {
            kind: tuple(window) for kind, window in analysis['windows'].items()
        },
        'qmax': int(analysis['qmax']),
        'kmax': int(analysis['kmax']),
        'profile_samples': int(analysis['profile_samples']),
        'profile_radius': float(analysis['profile_radius']),
        'branch_radius': float(analysis['branch_radius']),
        'branch_angles': int(analysis['branch_angles']),
        'branch_retries': int(analysis['branch_retries']),
        'validation_points': int(analysis['validation_points']),
        'workers': int(analysis['workers']),
    }
    return required_config_data


def _unique_names(pairs):
    names = [name for name, _ in pairs]
    duplicates = {name for name in names if names.count(name) > 1}
    if duplicates:
        raise MatrixFileError(f"Duplicate matrix names {sorted(duplicates)}.")
    return dict(pairs)


def parse_matrix(name : str, record : dict) -> np.ndarray:
    """Build one matrix from its JSON record.

    Raises
    ------
    MatrixFileError
        If the record is malformed or holds non-finite entries.
    """
    try:
        n = int(record['n'])
        entries = np.array(record['entries'], dtype=float)
        scale = str(record.get('scale', '1'))
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"Matrix {name!r} is malformed: {exc}") from exc
    if scale not in SCALES:
        raise MatrixFileError(f"Matrix {name!r} has unknown scale {scale!r}.")
    if n < 1 or entries.shape != (n * n, 2):
        raise MatrixFileError(
            f"Matrix {name!r} needs {n * n} [re, im] pairs, got shape "
            f"{entries.shape}."
        )
    if not np.all(np.isfinite(entries)):
        raise MatrixFileError(f"Matrix {name!r} has non-finite entries.")
    # Set parts separately so that signed zeros survive.
    matrix = np.empty(n * n, dtype=np.complex128)
    matrix.real = entries[:, 0]
    matrix.imag = entries[:, 1]
    matrix = matrix.reshape(n, n)
    if scale == '2pi_i':
        matrix = TWO_PI_I * matrix
    return matrix


def read_matrix_file(file_path : str) -> Dict[str, np.ndarray]:
    """Read every matrix of a matrix file.

    Parameters
    ----------
    file_path : str
        Path to the JSON matrix file.

    Returns
    -------
    Dict[str, np.ndarray]
        Matrices keyed by name.

    Raises
    ------
    MatrixFileError
        If the file is not valid JSON or a record is malformed.
    OSError
        If the file cannot be read.
    """
    with open(file_path, "r", encoding="utf-8") as f:
        try:
            content = json.load(f, object_pairs_hook=_unique_names)
        except json.JSONDecodeError as exc:
            raise MatrixFileError(f"{file_path} is not valid JSON: {exc}") \
                from exc
    if not isinstance(content, dict) or not content:
        raise MatrixFileError(f"{file_path} holds no named matrices.")
    matrices = {
        name: parse_matrix(name, record) for name, record in content.items()
    }
    logging.info("Read %d matrices from %s", len(matrices), file_path)
    return matrices


def matrix_record(matrix : np.ndarray) -> dict:
    """JSON record of a matrix.

    Matrices that are exactly ``2i*pi`` times an integer matrix (bit for
    bit after reloading) are written with the ``2pi_i`` scale and integer
    entries; all others with the unit scale and full precision floats.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    n = matrix.shape[0]
    integers = np.round((matrix / TWO_PI_I).real) + 0.0
    rebuilt = np.zeros_like(matrix)
    rebuilt.real = integers
    rebuilt = TWO_PI_I * rebuilt
    if rebuilt.tobytes() == matrix.tobytes():
        entries = [[int(k), 0] for k in integers.ravel()]
        scale = '2pi_i'
    else:
        entries = [[float(z.real), float(z.imag)] for z in matrix.ravel()]
        scale = '1'
    return {'n': n, 'scale': scale, 'entries': entries}


def write_matrix_file(
    file_path : str, matrices : Dict[str, np.ndarray]
) -> None:
    """Write named matrices to a matrix file."""
    content = {name: matrix_record(m) for name, m in matrices.items()}
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(content, f, indent=1)
    logging.info("Wrote %d matrices to %s", len(matrices), file_path)
