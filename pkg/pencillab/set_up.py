#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains functions for parsing command-line arguments,
setting parameters and configuring logging.
"""

import logging
import argparse
import os
from typing import Any, Dict, List, Optional, Tuple

from pencillab.load_data import (
    DEFAULT_CONFIG_DATA, load_json, extract_config_data
)
from pencillab.logs import setup_logging, log_parameter_info
from pencillab.verifier import ConditionKind

SEED_VARIABLE = 'PENCILLAB_SEED'
TOLERANCE_FLAGS = ('eps_root', 'eps_rank', 'eps_cluster', 'eps_verify',
                   'max_iter')


def parse_bool(value : str) -> bool:
    """Parse ``true``/``false`` assertion values."""
    lowered = value.lower()
    if lowered in ('true', '1', 'yes'):
        return True
    if lowered in ('false', '0', 'no'):
        return False
    raise argparse.ArgumentTypeError(f"Expected true or false, got {value!r}.")


def parse_complex(value : str) -> complex:
    """Parse a complex number written like ``-1.5+2j``."""
    try:
        return complex(value.replace(' ', ''))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config', default=None, help='Path of the configuration file'
    )
    common.add_argument(
        '--seed', type=int, default=None,
        help=f'Random seed (default: ${SEED_VARIABLE} or the configuration)'
    )
    for name in TOLERANCE_FLAGS:
        common.add_argument(
            f"--{name.replace('_', '-')}",
            type=int if name == 'max_iter' else float, default=None,
            help=f'Override the {name} tolerance'
        )
    common.add_argument(
        '--format', choices=('text', 'json'), default='text',
        help='Report format on standard output'
    )
    common.add_argument(
        '--report', default=None, help='Write the JSON report to this path'
    )
    common.add_argument(
        '--excel', default=None, help='Write report tables to this workbook'
    )
    common.add_argument(
        '--verbose', action='store_true', help='Log at DEBUG level'
    )
    common.add_argument(
        '--log-folder', default=None,
        help="Folder of the log file, 'none' to log to the console only"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the command-line parser with one subcommand per analysis.

    Returns
    -------
    argparse.ArgumentParser
        The parser.
    """
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        prog='pencillab',
        description='Exponential identities, matrix pencils and property L'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser(
        'check-pair', parents=[common],
        help='Check a window condition, commutation and property L'
    )
    check.add_argument('file', help='Matrix file')
    check.add_argument('A', help='Name of the first matrix')
    check.add_argument('B', help='Name of the second matrix')
    check.add_argument(
        '--kind', choices=[k.value for k in ConditionKind
                           if k is not ConditionKind.SEMIGROUP],
        default=ConditionKind.TWO_SIDED4.value, help='Condition to check'
    )
    check.add_argument(
        '--window', nargs=2, type=float, default=None, metavar=('LO', 'HI'),
        help='Window of k (or of t for local conditions)'
    )
    check.add_argument(
        '--l-window', nargs=2, type=float, default=None, metavar=('LO', 'HI'),
        help='Window of l for two-sided conditions'
    )
    for name in ('condition', 'property-l', 'commuting'):
        check.add_argument(
            f'--assert-{name}', type=parse_bool, default=None,
            help=f'Expected {name} verdict (true/false)'
        )

    scan = commands.add_parser(
        'pencil-scan', parents=[common],
        help='Profile the pencil A + zB and its branch points'
    )
    scan.add_argument('file', help='Matrix file')
    scan.add_argument('A', help='Name of the first matrix')
    scan.add_argument('B', help='Name of the second matrix')
    scan.add_argument(
        '--center', type=parse_complex, default=None,
        help='Extra point whose branch structure is reported'
    )
    scan.add_argument(
        '--radius', type=float, default=1.0,
        help='Radius of the sampled circle for the trajectory CSV'
    )
    scan.add_argument(
        '--points', type=int, default=256, help='Samples of the trajectory'
    )
    scan.add_argument(
        '--emit-csv', default=None, help='Write eigenvalue trajectories here'
    )
    scan.add_argument(
        '--trajectory-points', type=int, default=5,
        help='Regular points of the eigenprojection trajectory'
    )

    decompose = commands.add_parser(
        'decompose', parents=[common],
        help='Jordan-Chevalley decomposition of a matrix'
    )
    decompose.add_argument('file', help='Matrix file')
    decompose.add_argument('name', help='Name of the matrix')

    gallery = commands.add_parser(
        'gallery', parents=[common], help='Check the gallery claims'
    )
    gallery.add_argument('--case', default='all', help='Case name or all')
    gallery.add_argument(
        '--assert', dest='assert_claims', action='store_true',
        help='Exit with 1 unless every claim holds'
    )

    write = commands.add_parser(
        'write-gallery', parents=[common],
        help='Write every gallery pair to a matrix file'
    )
    write.add_argument('out', help='Output matrix file')

    span = commands.add_parser(
        'span', parents=[common],
        help='Certify property L for the span of several matrices'
    )
    span.add_argument('file', help='Matrix file')
    span.add_argument('names', nargs='+', help='Names of the generators')
    span.add_argument(
        '--depth', type=int, default=2,
        help='Depth of the semigroup homomorphism check'
    )
    span.add_argument(
        '--assert-property-l', type=parse_bool, default=None,
        help='Expected property L verdict (true/false)'
    )
    return parser


def parse_cli_arguments(argv : Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Parameters
    ----------
    argv : Optional[List[str]]
        Arguments without the program name, by default ``sys.argv[1:]``.

    Returns
    -------
    argparse.Namespace
        Parsed command-line arguments.
    """
    return build_parser().parse_args(argv)


def load_parameters(
    config_filename : Optional[str], args : argparse.Namespace
) -> Dict[str, Any]:
    """Load the configuration and apply command-line overrides.

    The seed comes from ``--seed``, else from the ``PENCILLAB_SEED``
    environment variable, else from the configuration file.

    Parameters
    ----------
    config_filename : Optional[str]
        Path of ``config.json``; None uses the built-in defaults.
    args : argparse.Namespace
        Parsed command-line arguments.

    Returns
    -------
    Dict[str, Any]
        Dictionary containing the global parameters.
    """
    if config_filename is None:
        config_data = DEFAULT_CONFIG_DATA
    else:
        config_data = load_json(config_filename)
    params = extract_config_data(config_data)
    changes = {
        name: getattr(args, name) for name in TOLERANCE_FLAGS
        if getattr(args, name, None) is not None
    }
    if changes:
        params['tolerances'] = params['tolerances'].replace(**changes)
    if getattr(args, 'seed', None) is not None:
        params['seed'] = args.seed
    elif os.environ.get(SEED_VARIABLE):
        params['seed'] = int(os.environ[SEED_VARIABLE])
    if getattr(args, 'log_folder', None) is not None:
        params['log_folder'] = args.log_folder
    if str(params['log_folder']).lower() == 'none':
        params['log_folder'] = None
    params['command_line_args'] = args
    return params


def initialize_environment(
    argv : Optional[List[str]], default_config : Optional[str] = None
) -> Tuple[argparse.Namespace, Dict[str, Any]]:
    """Parse arguments, load parameters and set up logging.

    Parameters
    ----------
    argv : Optional[List[str]]
        Command-line arguments.
    default_config : Optional[str]
        Configuration file used when ``--config`` is absent; ignored when
        it does not exist.

    Returns
    -------
    Tuple[argparse.Namespace, Dict[str, Any]]
        The arguments and the global parameters.
    """
    args = parse_cli_arguments(argv)
    config_filename = args.config
    if config_filename is None and default_config \
            and os.path.exists(default_config):
        config_filename = default_config
    params = load_parameters(config_filename, args)
    setup_logging(
        params['log_folder'], logging.DEBUG if args.verbose else logging.INFO
    )
    log_parameter_info(params)
    return args, params
