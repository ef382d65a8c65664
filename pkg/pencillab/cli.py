#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the command implementations of the ``pencillab``
command line and its entry point :func:`main`.

Exit codes: 0 when every requested assertion holds, 1 when one fails, 2 on
input errors (files, names, arguments) and 3 on numerical failures.
"""

import logging
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from pencillab.chevalley import eigenprojections, jordan_chevalley
from pencillab.errors import HypothesisViolated, NumericalError
from pencillab.expmat import (
    commutes, expm, is_unit_exponential, relative_residual, unipotent_log
)
from pencillab.gallery import gallery, run_gallery
from pencillab.load_data import read_matrix_file, write_matrix_file
from pencillab.numcore import check_same_dimension, is_diagonalizable
from pencillab.output_data import (
    Report, create_data_array, save_trajectory_csv, write_report
)
from pencillab.pencil import (
    Pencil, branch_structure, eigenprojection_trajectory, profile,
    property_L_pair, property_L_span, regular_points, track_eigenvalues
)
from pencillab.set_up import initialize_environment
from pencillab.verifier import (
    ConditionKind, check_condition, check_semigroup_homomorphism, commutator
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

LOCAL_KINDS = (ConditionKind.LOCAL_COMMUTE, ConditionKind.LOCAL_PRODUCT)
DEFAULT_CONFIG = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config.json'
)

CommandResult = Tuple[Report, int]


def _lookup(matrices : Dict[str, np.ndarray], name : str) -> np.ndarray:
    if name not in matrices:
        raise KeyError(
            f"No matrix named {name!r}; available: {sorted(matrices)}."
        )
    return matrices[name]


def _read_pair(args) -> Tuple[np.ndarray, np.ndarray]:
    matrices = read_matrix_file(args.file)
    A = _lookup(matrices, args.A)
    B = _lookup(matrices, args.B)
    check_same_dimension(A, B)
    return A, B


def _output_path(
    params : Dict[str, Any], path : Optional[str]
) -> Optional[str]:
    """Place bare file names in the configured output folder."""
    if not path or os.path.dirname(path) or not params['output_folder']:
        return path
    return os.path.join(params['output_folder'], path)


def _new_report(params : Dict[str, Any]) -> Report:
    return Report(
        command=params['command_echo'], tolerances=params['tolerances'],
        seed=params['seed']
    )


def _assertion_code(
    verdicts : Dict[str, bool], expected : Dict[str, Optional[bool]]
) -> int:
    code = EXIT_OK
    for name, value in expected.items():
        if value is None:
            continue
        if verdicts[name] != value:
            logging.error(
                "Assertion on %s failed: expected %s, observed %s", name,
                value, verdicts[name]
            )
            code = EXIT_ASSERTION
    return code


def _window(args, params : Dict[str, Any], kind : ConditionKind):
    if args.window is None:
        return params['windows'][kind.value]
    if kind in LOCAL_KINDS:
        return tuple(args.window)
    window = tuple(int(round(v)) for v in args.window)
    if args.l_window is not None and kind is not ConditionKind.BOURGEOIS3:
        return (window, tuple(int(round(v)) for v in args.l_window))
    return window


def _family_table(family) -> pd.DataFrame:
    if family is None:
        return pd.DataFrame()
    if family.mode == 'affine':
        return pd.DataFrame({
            'constant': family.coefficients[:, 0],
            'slope': family.coefficients[:, 1],
        })
    return pd.DataFrame(
        family.coefficients,
        columns=[f'coefficient_{j}' for j in range(family.coefficients.shape[1])]
    )


def cmd_check_pair(args, params : Dict[str, Any]) -> CommandResult:
    """Check a window condition, commutation and property L of a pair."""
    tol = params['tolerances']
    A, B = _read_pair(args)
    kind = ConditionKind(args.kind)
    condition = check_condition(
        A, B, kind, _window(args, params, kind), tol,
        params['expm_norm_bound'], params['workers']
    )
    _, bracket_norm = commutator(A, B)
    family = property_L_pair(
        A, B, tol, params['seed'], params['validation_points']
    )

    report = _new_report(params)
    report.verdicts = {
        'condition': condition.holds,
        'commuting': commutes(A, B, tol),
        'property_l': family is not None,
    }
    report.details = {
        'kind': kind.value,
        'window': condition.window,
        'violations': len(condition.violations),
        'commutator_norm': bracket_norm,
    }
    report.tables = {'residuals': condition.table}
    if family is not None:
        report.tables['family'] = _family_table(family)
    code = _assertion_code(report.verdicts, {
        'condition': args.assert_condition,
        'property_l': args.assert_property_l,
        'commuting': args.assert_commuting,
    })
    return report, code


def _branch_rows(structure) -> List[Dict[str, Any]]:
    rows = []
    for cycle in structure.cycles:
        coefficient, exponent = None, None
        if cycle.leading_term is not None:
            coefficient = cycle.leading_term[0]
            exponent = str(cycle.exponent)
        rows.append({
            'center': structure.center, 'length': cycle.length,
            'value': cycle.value, 'coefficient': coefficient,
            'exponent': exponent,
        })
    return rows


def _circle(center : complex, radius : float, points : int) -> np.ndarray:
    thetas = 2 * np.pi * np.arange(points + 1) / points
    return center + radius * np.exp(1j * thetas)


def cmd_pencil_scan(args, params : Dict[str, Any]) -> CommandResult:
    """Profile ``A + zB``: exceptional points, branches, eigenprojections."""
    tol = params['tolerances']
    seed = params['seed']
    A, B = _read_pair(args)
    pencil = Pencil(A, B)
    generic = profile(
        pencil, tol, seed, params['profile_samples'],
        params['profile_radius'], params['workers']
    )

    centers = list(generic.exceptional_points)
    if args.center is not None:
        centers.append(args.center)
    rows = []
    for center in centers:
        structure = branch_structure(
            pencil, center, tol, seed, params['branch_radius'],
            params['branch_angles'], params['branch_retries']
        )
        rows.extend(_branch_rows(structure))

    report = _new_report(params)
    report.details = {
        'p': generic.p,
        'n': pencil.n,
        'exceptional_points': generic.exceptional_points,
        'samples_used': generic.samples_used,
    }
    report.verdicts = {
        'generic_simple': generic.p == pencil.n,
        'degenerate_discriminant': generic.degenerate,
    }
    report.tables = {'branches': pd.DataFrame(rows)}

    if args.trajectory_points >= 2:
        zs = regular_points(
            pencil, generic, args.trajectory_points, tol, seed,
            params['profile_radius']
        )
        trajectory = eigenprojection_trajectory(pencil, zs, tol, seed)
        report.details['projection_deviation'] = trajectory.max_deviation
        report.tables['projections'] = pd.DataFrame({
            'branch': np.arange(len(trajectory.deviations)),
            'deviation': trajectory.deviations,
        })

    if args.emit_csv:
        csv_path = _output_path(params, args.emit_csv)
        center = 0j if args.center is None else args.center
        zs = _circle(center, args.radius, args.points)
        track = track_eigenvalues(pencil, zs, tol, seed, params['workers'])
        trajectory = create_data_array(
            track, zs, {'center': str(center), 'radius': args.radius}
        )
        save_trajectory_csv(trajectory, csv_path)
        report.details['csv'] = csv_path
    return report, EXIT_OK


def _matrix_frame(matrix : np.ndarray) -> pd.DataFrame:
    return pd.DataFrame(
        matrix, columns=[f'c{j}' for j in range(matrix.shape[1])]
    )


def cmd_decompose(args, params : Dict[str, Any]) -> CommandResult:
    """Jordan-Chevalley decomposition and eigenprojections of a matrix."""
    tol = params['tolerances']
    seed = params['seed']
    matrix = _lookup(read_matrix_file(args.file), args.name)
    decomposition = jordan_chevalley(matrix, tol, seed)
    projections = eigenprojections(matrix, tol, seed)
    nilpotent = decomposition.N
    log_residual = relative_residual(
        unipotent_log(expm(nilpotent, params['expm_norm_bound']).value, tol),
        nilpotent
    )

    residuals = {
        **{f'jc_{k}': v for k, v in decomposition.residuals(matrix).items()},
        **{f'projection_{k}': v
           for k, v in projections.residuals(matrix).items()},
        'nilpotent_log': log_residual,
    }
    report = _new_report(params)
    report.verdicts = {
        'diagonalizable': is_diagonalizable(matrix, tol, seed),
        'unit_exponential': is_unit_exponential(matrix, tol, seed),
    }
    report.details = {'n': matrix.shape[0]}
    report.tables = {
        'eigenvalues': pd.DataFrame({
            'value': projections.values,
            'multiplicity': projections.multiplicities,
        }),
        'D': _matrix_frame(decomposition.D),
        'N': _matrix_frame(nilpotent),
        'residuals': pd.DataFrame({
            'identity': list(residuals), 'residual': list(residuals.values())
        }),
    }
    return report, EXIT_OK


def cmd_gallery(args, params : Dict[str, Any]) -> CommandResult:
    """Check the claims of the gallery cases."""
    claims = run_gallery(args.case, params['tolerances'], params['seed'])
    report = _new_report(params)
    report.verdicts = {'all_claims_hold': bool(claims['passed'].all())}
    report.details = {
        'claims': len(claims), 'failed': int((~claims['passed']).sum())
    }
    report.tables = {'claims': claims}
    code = EXIT_OK
    if args.assert_claims and not report.verdicts['all_claims_hold']:
        code = EXIT_ASSERTION
    return report, code


def cmd_write_gallery(args, params : Dict[str, Any]) -> CommandResult:
    """Write the gallery pairs as ``<case>_A`` and ``<case>_B``."""
    matrices = {}
    for name, case in gallery(params['seed']).items():
        matrices[f'{name}_A'] = case.A
        matrices[f'{name}_B'] = case.B
    write_matrix_file(args.out, matrices)
    reread = read_matrix_file(args.out)
    report = _new_report(params)
    report.verdicts = {
        'round_trip': all(
            reread[name].tobytes() == np.asarray(m, np.complex128).tobytes()
            for name, m in matrices.items()
        )
    }
    report.details = {'file': args.out, 'matrices': sorted(matrices)}
    return report, EXIT_OK


def cmd_span(args, params : Dict[str, Any]) -> CommandResult:
    """Property L of a spanned subspace and its semigroup identity."""
    tol = params['tolerances']
    matrices = read_matrix_file(args.file)
    generators = [_lookup(matrices, name) for name in args.names]
    check_same_dimension(*generators)
    family = property_L_span(
        generators, tol, params['seed'], params['validation_points']
    )
    semigroup = check_semigroup_homomorphism(
        generators, args.depth, tol, params['expm_norm_bound']
    )
    report = _new_report(params)
    report.verdicts = {
        'property_l': family is not None,
        'semigroup_homomorphism': semigroup.holds,
    }
    report.details = {
        'generators': list(args.names),
        'dimension': 0 if family is None else len(family.basis),
    }
    report.tables = {'semigroup': semigroup.table}
    if family is not None:
        report.tables['family'] = _family_table(family)
    code = _assertion_code(
        report.verdicts, {'property_l': args.assert_property_l}
    )
    return report, code


COMMANDS : Dict[str, Callable[..., CommandResult]] = {
    'check-pair': cmd_check_pair,
    'pencil-scan': cmd_pencil_scan,
    'decompose': cmd_decompose,
    'gallery': cmd_gallery,
    'write-gallery': cmd_write_gallery,
    'span': cmd_span,
}


def main(
    argv : Optional[List[str]] = None, default_config : str = DEFAULT_CONFIG
) -> int:
    """Run one command and print its report.

    Parameters
    ----------
    argv : Optional[List[str]]
        Arguments without the program name, by default ``sys.argv[1:]``.
    default_config : str, optional
        Configuration used when ``--config`` is absent.

    Returns
    -------
    int
        The exit code.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args, params = initialize_environment(argv, default_config)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    except (OSError, ValueError, KeyError) as exc:
        logging.error("Invalid configuration: %s", exc)
        return EXIT_INPUT
    params['command_echo'] = ' '.join(['pencillab', *argv])

    start = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args, params)
    except NumericalError as exc:
        logging.error("%s: %s", type(exc).__name__, exc)
        return EXIT_NUMERICAL
    except (OSError, ValueError, KeyError, HypothesisViolated) as exc:
        logging.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INPUT
    report.timing = time.perf_counter() - start
    rendering = write_report(
        report, args.format, _output_path(params, args.report),
        _output_path(params, args.excel)
    )
    print(rendering)
    return code
