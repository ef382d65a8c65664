#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the gallery of reference pairs and the claims each
of them is expected to satisfy.

* ``tu``: a 3x3 pair with :math:`e^{A} = e^{B} = I_3` and
  :math:`e^{tA + B} = I_3` for every integer :math:`t \\ge 0`, with property
  L, that does not commute.
* ``semigroup2x2``: a 2x2 pair whose exponential is a homomorphism on the
  additive semigroup they generate but not on the group.
* ``commuting``: a seeded pair of polynomials in one matrix.
* ``shift``: the nilpotent shift and its transpose, whose pencil has the
  branch point :math:`\\pm\\sqrt{z}` at the origin.
* ``triangularizable``: a seeded pair conjugate to two upper triangular
  matrices.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd

from pencillab.expmat import expm, relative_residual
from pencillab.logs import timer
from pencillab.numcore import (
    TWO_PI_I, Tolerances, charpoly, common_eigenvector, resolve_tolerances
)
from pencillab.pencil import (
    Pencil, branch_structure, profile, property_L_pair
)
from pencillab.utils import make_rng
from pencillab.verifier import (
    ConditionKind, check_condition, check_semigroup_homomorphism, commutator,
    find_splitting
)

CASES = ('tu', 'semigroup2x2', 'commuting', 'shift', 'triangularizable')
IDENTITY_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class GalleryCase:
    """A named pair with the claims it must satisfy.

    Parameters
    ----------
    name : str
        Case name.
    A, B : np.ndarray
        The pair.
    claims : List[Tuple[str, bool]]
        ``(claim name, expected verdict)``.
    description : str
        One line description.
    """
    name : str
    A : np.ndarray
    B : np.ndarray
    claims : List[Tuple[str, bool]] = field(default_factory=list)
    description : str = ''


def _is_identity(matrix : np.ndarray) -> bool:
    identity = np.eye(matrix.shape[0])
    return relative_residual(matrix, identity, 1.0) <= IDENTITY_TOLERANCE


def _exp_is_identity(matrix : np.ndarray) -> bool:
    return _is_identity(expm(matrix).value)


def _claim_exp_a(case, tol, seed):
    return _exp_is_identity(case.A)


def _claim_exp_b(case, tol, seed):
    return _exp_is_identity(case.B)


def _claim_exp_sum(case, tol, seed):
    return _exp_is_identity(case.A + case.B)


def _claim_exp_one_sided(case, tol, seed):
    return all(_exp_is_identity(t * case.A + case.B) for t in range(11))


def _claim_charpoly(case, tol, seed):
    for t in range(6):
        expected = np.poly(
            [0, TWO_PI_I * (t + 2), TWO_PI_I * (2 * t + 3)]
        )
        coeffs = charpoly(t * case.A + case.B).coeffs
        if np.any(np.abs(coeffs - expected)
                  > IDENTITY_TOLERANCE * np.maximum(1.0, np.abs(expected))):
            return False
    return True


def _claim_commuting(case, tol, seed):
    _, norm = commutator(case.A, case.B)
    scale = max(1.0, np.linalg.norm(case.A, 2) * np.linalg.norm(case.B, 2))
    return norm <= tol.eps_verify * scale


def _claim_commutator_large(case, tol, seed):
    return commutator(case.A, case.B)[1] > 0.5


def _claim_common_eigenvector(case, tol, seed):
    return common_eigenvector(case.A, case.B, tol, seed) is not None


def _claim_property_l(case, tol, seed):
    return property_L_pair(case.A, case.B, tol, seed) is not None


def _claim_one_sided(case, tol, seed):
    return check_condition(
        case.A, case.B, ConditionKind.BOURGEOIS3, (0, 5), tol
    ).holds


def _claim_two_sided(case, tol, seed):
    return check_condition(
        case.A, case.B, ConditionKind.TWO_SIDED4, (-2, 2), tol
    ).holds


def _claim_negative_violation(case, tol, seed):
    # Every failing lattice point leaves the semigroup.
    report = check_condition(
        case.A, case.B, ConditionKind.TWO_SIDED4, (-2, 2), tol
    )
    return bool(report.violations) and all(
        min(point) < 0 for point, _ in report.violations
    )


def _claim_two_sided_wide(case, tol, seed):
    return check_condition(
        case.A, case.B, ConditionKind.TWO_SIDED4, (-3, 3), tol
    ).holds


def _claim_semigroup(case, tol, seed):
    return check_semigroup_homomorphism([case.A, case.B], 3, tol).holds


def _claim_splitting(case, tol, seed):
    return find_splitting(case.A, case.B, tol, seed) is not None


def _claim_exceptional_points(case, tol, seed):
    # The pencil B + tA collides at t = -2, -3/2, -1.
    found = profile(Pencil(case.B, case.A), tol, seed).exceptional_points
    expected = [-2.0, -1.5, -1.0]
    return len(found) == 3 and all(
        abs(z - e) <= 1e-6 for z, e in zip(found, expected)
    )


def _claim_branch_point(case, tol, seed):
    structure = branch_structure(Pencil(case.A, case.B), 0, tol, seed)
    return structure.lengths == [2]


CLAIMS : Dict[str, Callable] = {
    'exp_A_is_identity': _claim_exp_a,
    'exp_B_is_identity': _claim_exp_b,
    'exp_A_plus_B_is_identity': _claim_exp_sum,
    'exp_tA_plus_B_is_identity': _claim_exp_one_sided,
    'charpoly_matches': _claim_charpoly,
    'commuting': _claim_commuting,
    'commutator_large': _claim_commutator_large,
    'common_eigenvector': _claim_common_eigenvector,
    'property_L': _claim_property_l,
    'one_sided_window': _claim_one_sided,
    'two_sided_window': _claim_two_sided,
    'two_sided_wide_window': _claim_two_sided_wide,
    'two_sided_fails_off_semigroup': _claim_negative_violation,
    'semigroup_homomorphism': _claim_semigroup,
    'splitting': _claim_splitting,
    'exceptional_points': _claim_exceptional_points,
    'branch_point_at_origin': _claim_branch_point,
}


def tu_pair() -> Tuple[np.ndarray, np.ndarray]:
    """The 3x3 pair with unit exponentials along ``tA + B``."""
    A = TWO_PI_I * np.array([
        [1, 0, 0],
        [0, 2, 0],
        [0, 0, 0],
    ])
    B = TWO_PI_I * np.array([
        [2, 1, 1],
        [1, 3, -2],
        [1, 1, 0],
    ])
    return A, B


def semigroup_pair() -> Tuple[np.ndarray, np.ndarray]:
    """The 2x2 pair with unit exponentials that does not commute."""
    A = TWO_PI_I * np.array([[0, 0], [0, 1]])
    B = np.array([[0, 1], [0, TWO_PI_I]])
    return A, B


def shift_pair() -> Tuple[np.ndarray, np.ndarray]:
    """The nilpotent shift and its transpose."""
    A = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    return A, A.T.copy()


def commuting_pair(
    seed : int = 0, n : int = 3, norm : float = 0.5
) -> Tuple[np.ndarray, np.ndarray]:
    """Two random polynomials in a common random matrix."""
    rng = make_rng(seed)
    base = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    base *= norm / np.linalg.norm(base, 2)
    a = rng.normal(size=3) + 1j * rng.normal(size=3)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    square = base @ base
    A = a[0] * np.eye(n) + a[1] * base + a[2] * square
    B = b[0] * np.eye(n) + b[1] * base + b[2] * square
    return A, B


def triangularizable_pair(
    seed : int = 0, n : int = 3
) -> Tuple[np.ndarray, np.ndarray]:
    """Two non-commuting matrices conjugate to upper triangular ones."""
    rng = make_rng(seed)
    similarity = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    similarity += 3 * np.eye(n)
    upper = []
    for _ in range(2):
        block = np.triu(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        upper.append(block)
    inverse = np.linalg.inv(similarity)
    return (
        similarity @ upper[0] @ inverse, similarity @ upper[1] @ inverse
    )


def gallery(seed : int = 0) -> Dict[str, GalleryCase]:
    """The reference pairs with their claims.

    Parameters
    ----------
    seed : int, optional
        Seed of the random cases, by default 0.

    Returns
    -------
    Dict[str, GalleryCase]
        Cases keyed by name.
    """
    tu_a, tu_b = tu_pair()
    semi_a, semi_b = semigroup_pair()
    shift_a, shift_b = shift_pair()
    comm_a, comm_b = commuting_pair(seed)
    tri_a, tri_b = triangularizable_pair(seed)
    return {
        'tu': GalleryCase('tu', tu_a, tu_b, [
            ('exp_A_is_identity', True),
            ('exp_B_is_identity', True),
            ('exp_tA_plus_B_is_identity', True),
            ('charpoly_matches', True),
            ('common_eigenvector', False),
            ('property_L', True),
            ('commuting', False),
            ('commutator_large', True),
            ('one_sided_window', True),
            ('two_sided_window', False),
            ('two_sided_fails_off_semigroup', True),
            ('exceptional_points', True),
        ], "3x3 pair with e^(tA+B) = I for t >= 0, not commuting"),
        'semigroup2x2': GalleryCase('semigroup2x2', semi_a, semi_b, [
            ('exp_A_is_identity', True),
            ('exp_B_is_identity', True),
            ('exp_A_plus_B_is_identity', True),
            ('commuting', False),
            ('commutator_large', True),
            ('semigroup_homomorphism', True),
            ('two_sided_window', False),
            ('two_sided_fails_off_semigroup', True),
            ('splitting', False),
        ], "2x2 pair, exponential additive on the semigroup only"),
        'commuting': GalleryCase('commuting', comm_a, comm_b, [
            ('commuting', True),
            ('two_sided_wide_window', True),
            ('property_L', True),
        ], "polynomials in a common matrix"),
        'shift': GalleryCase('shift', shift_a, shift_b, [
            ('property_L', False),
            ('commuting', False),
            ('branch_point_at_origin', True),
        ], "shift and transposed shift, eigenvalues +-sqrt(z)"),
        'triangularizable': GalleryCase(
            'triangularizable', tri_a, tri_b, [
                ('property_L', True),
                ('common_eigenvector', True),
                ('commuting', False),
            ], "conjugates of two upper triangular matrices"
        ),
    }


def verify_case(
    case : GalleryCase, tol : Tolerances = None, seed : int = 0
) -> pd.DataFrame:
    """Check every claim of a case.

    Returns
    -------
    pd.DataFrame
        Columns ``case``, ``claim``, ``expected``, ``observed``, ``passed``.
    """
    tol = resolve_tolerances(tol)
    rows = []
    for claim, expected in case.claims:
        observed = bool(CLAIMS[claim](case, tol, seed))
        if observed != expected:
            logging.warning(
                "Claim %s of case %s: expected %s, observed %s", claim,
                case.name, expected, observed
            )
        rows.append({
            'case': case.name, 'claim': claim, 'expected': expected,
            'observed': observed, 'passed': observed == expected,
        })
    return pd.DataFrame(rows)


@timer
def run_gallery(
    name : str = 'all', tol : Tolerances = None, seed : int = 0
) -> pd.DataFrame:
    """Check the claims of one case, or of all cases with ``'all'``.

    Raises
    ------
    KeyError
        If the case name is unknown.
    """
    cases = gallery(seed)
    names = list(CASES) if name == 'all' else [name]
    unknown = [n for n in names if n not in cases]
    if unknown:
        raise KeyError(f"Unknown gallery case {unknown[0]!r}.")
    return pd.concat(
        [verify_case(cases[n], tol, seed) for n in names], ignore_index=True
    )
