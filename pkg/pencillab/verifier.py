#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains executable checks of exponential identities and of
the spectral hypotheses around them.

**Conditions on integer windows**

For integers :math:`k, l` in a finite window the following equalities are
evaluated numerically:

.. math::

    e^{kA+B} = e^{kA}e^{B} = e^{B}e^{kA} \\quad \\text{(one-sided)}

    e^{kA+lB} = e^{kA}e^{lB} = e^{lB}e^{kA} \\quad \\text{(two-sided)}

A residual is measured relative to
:math:`\\max(1, \\|e^{kA}\\|\\|e^{lB}\\|, \\|e^{kA+lB}\\|)`. A finite window is
a necessary test only; the identities concern all integers.

**Products of exponential eigenvalues**

For :math:`k \\ge 1` the map
:math:`\\gamma_k(\\lambda, \\mu) = \\lambda^k\\mu` on
:math:`\\operatorname{Sp}(e^A) \\times \\operatorname{Sp}(e^B)` is tested for
injectivity. When :math:`\\gamma_1` is one-to-one and :math:`e^A, e^B`
commute,

.. math::

    C_\\mu(e^B) = \\bigoplus_{\\lambda \\in \\operatorname{Sp}(e^A)}
    C_{\\lambda\\mu}(e^Ae^B).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from pencillab.chevalley import char_subspace
from pencillab.errors import (
    AmbiguousSeparation, HypothesisViolated, NotAnEigenvalue, Overflow
)
from pencillab.expmat import DEFAULT_NORM_BOUND, commutes, expm
from pencillab.logs import timer
from pencillab.numcore import (
    TWO_PI_I, Subspace, Tolerances, as_cmatrix, check_same_dimension, kernel,
    is_diagonalizable, magnitude, orthonormal_basis, resolve_tolerances,
    spectrum, subspace_distance, subspace_sum
)
from pencillab.pencil import Pencil, profile, property_L_pair
from pencillab.utils import cartesian_product, integer_window

DEFAULT_QMAX = 64
DEFAULT_KMAX = 16
LOCAL_GRID = 21

Window = Union[int, Tuple[int, int], Tuple[Tuple[int, int], Tuple[int, int]]]


class ConditionKind(Enum):
    """Exponential identities that can be checked on a window."""
    BOURGEOIS3 = 'bourgeois3'
    TWO_SIDED4 = 'two_sided4'
    WINDOW = 'window'
    LOCAL_COMMUTE = 'local_commute'
    LOCAL_PRODUCT = 'local_product'
    SEMIGROUP = 'semigroup'


DEFAULT_WINDOWS = {
    ConditionKind.BOURGEOIS3: (0, 6),
    ConditionKind.TWO_SIDED4: (-3, 3),
    ConditionKind.WINDOW: (-3, 3),
    ConditionKind.LOCAL_COMMUTE: (-1.0, 1.0),
    ConditionKind.LOCAL_PRODUCT: (-1.0, 1.0),
}


@dataclass(frozen=True, eq=False)
class ConditionReport:
    """Result of checking an exponential identity on a window.

    Parameters
    ----------
    kind : ConditionKind
        The identity.
    window : tuple
        The window as given (after defaults).
    holds : bool
        True iff no violation was found.
    violations : List[Tuple[tuple, float]]
        Lattice points and relative residuals above ``eps_verify``.
    table : pd.DataFrame
        One row per lattice point with its residual.
    """
    kind : ConditionKind
    window : tuple
    holds : bool
    violations : List[Tuple[tuple, float]]
    table : pd.DataFrame = field(default_factory=pd.DataFrame)


@dataclass(frozen=True)
class GammaMap:
    """Table of ``gamma_k(lambda, mu) = lambda^k mu``."""
    k : int
    table : List[Tuple[Tuple[complex, complex], complex]]

    @property
    def images(self) -> np.ndarray:
        """Values of the map."""
        return np.array([value for _, value in self.table], dtype=complex)


@dataclass(frozen=True, eq=False)
class PairSplitting:
    """Decomposition into two subspaces invariant under both matrices."""
    F : Subspace
    G : Subspace


@dataclass(frozen=True)
class MotzkinTausskyReport:
    """Hypotheses and conclusion of the refined commutation criterion.

    Parameters
    ----------
    property_l : bool
        Whether the pair has a certified affine family.
    b_diagonalizable : bool
        Whether ``B`` is diagonalizable.
    exceptional : Dict[complex, bool]
        Diagonalizability of ``A + zB`` at every exceptional point.
    commutes : bool
        Whether ``AB = BA``.
    """
    property_l : bool
    b_diagonalizable : bool
    exceptional : Dict[complex, bool]
    commutes : bool

    @property
    def hypotheses_hold(self) -> bool:
        """Whether every hypothesis holds."""
        return (
            self.property_l and self.b_diagonalizable
            and all(self.exceptional.values())
        )


def commutator(
    A : np.ndarray, B : np.ndarray
) -> Tuple[np.ndarray, float]:
    """The commutator ``AB - BA`` and its 2-norm."""
    A = as_cmatrix(A, 'A')
    B = as_cmatrix(B, 'B')
    check_same_dimension(A, B)
    bracket = A @ B - B @ A
    return bracket, float(np.linalg.norm(bracket, 2))


def _lattice(kind : ConditionKind, window) -> List[tuple]:
    if kind is ConditionKind.BOURGEOIS3:
        return [(k, 1) for k in integer_window(window)]
    if kind in (ConditionKind.LOCAL_COMMUTE, ConditionKind.LOCAL_PRODUCT):
        low, high = window
        return [(t, t) for t in np.linspace(low, high, LOCAL_GRID)]
    if not isinstance(window, (int, np.integer)) and isinstance(
        window[0], (tuple, list)
    ):
        first, second = window
    else:
        first = second = window
    return cartesian_product(integer_window(first), integer_window(second))


def _residual(
    A : np.ndarray, B : np.ndarray, point : tuple, kind : ConditionKind,
    norm_bound : float
) -> float:
    k, l = point
    exp_a = expm(k * A, norm_bound).value
    exp_b = expm(l * B, norm_bound).value
    product = exp_a @ exp_b
    reverse = exp_b @ exp_a
    if kind is ConditionKind.LOCAL_COMMUTE:
        scale = max(1.0, np.linalg.norm(exp_a, 2) * np.linalg.norm(exp_b, 2))
        return float(np.linalg.norm(product - reverse, 2) / scale)
    joint = expm(k * A + l * B, norm_bound).value
    scale = max(
        1.0, np.linalg.norm(exp_a, 2) * np.linalg.norm(exp_b, 2),
        np.linalg.norm(joint, 2)
    )
    residual = np.linalg.norm(joint - product, 2) / scale
    if kind in (ConditionKind.BOURGEOIS3, ConditionKind.TWO_SIDED4):
        residual = max(residual, np.linalg.norm(product - reverse, 2) / scale)
    return float(residual)


def _report(
    kind : ConditionKind, window : tuple, points : Sequence[tuple],
    residuals : Sequence[float], tol : Tolerances
) -> ConditionReport:
    violations = [
        (tuple(p), r) for p, r in zip(points, residuals) if r > tol.eps_verify
    ]
    table = pd.DataFrame({
        'point': [tuple(p) for p in points],
        'residual': list(residuals),
    })
    table['holds'] = table['residual'] <= tol.eps_verify
    return ConditionReport(kind, window, not violations, violations, table)


@timer
def check_condition(
    A : np.ndarray, B : np.ndarray, kind : ConditionKind,
    window : Optional[Window] = None, tol : Optional[Tolerances] = None,
    norm_bound : float = DEFAULT_NORM_BOUND, workers : int = 1
) -> ConditionReport:
    """Check an exponential identity on a window.

    Parameters
    ----------
    A, B : np.ndarray
        Square matrices of the same dimension.
    kind : ConditionKind
        The identity to check.
    window : Optional[Window]
        Integer window of ``k`` for the one-sided condition; a window used
        for both ``k`` and ``l`` or a pair of windows for the two-sided
        ones; a real interval ``(t_min, t_max)`` for the local ones.
    tol : Optional[Tolerances]
        ``eps_verify`` is the residual threshold.
    norm_bound : float, optional
        Exponential norm bound.
    workers : int, optional
        Threads evaluating lattice points; the report keeps lattice order.

    Returns
    -------
    ConditionReport
        Verdict, violations and per-point residuals.

    Raises
    ------
    Overflow
        If a window point exceeds the exponential norm bound.
    """
    tol = resolve_tolerances(tol)
    kind = ConditionKind(kind)
    A = as_cmatrix(A, 'A')
    B = as_cmatrix(B, 'B')
    check_same_dimension(A, B)
    if kind is ConditionKind.SEMIGROUP:
        raise ValueError("Use check_semigroup_homomorphism for semigroups.")
    window = DEFAULT_WINDOWS[kind] if window is None else window
    points = _lattice(kind, window)

    def evaluate(point):
        return _residual(A, B, point, kind, norm_bound)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            residuals = list(executor.map(evaluate, points))
    else:
        residuals = [evaluate(point) for point in points]
    report = _report(kind, window, points, residuals, tol)
    logging.info(
        "Condition %s on window %s: %s (%d violations)", kind.value, window,
        'holds' if report.holds else 'fails', len(report.violations)
    )
    return report


def check_semigroup_homomorphism(
    generators : Sequence[np.ndarray], depth : int = 3,
    tol : Optional[Tolerances] = None,
    norm_bound : float = DEFAULT_NORM_BOUND
) -> ConditionReport:
    """Check :math:`e^{\\sum k_jA_j} = \\prod e^{k_jA_j}` for
    :math:`k \\in \\{0, \\ldots, depth\\}^r`."""
    tol = resolve_tolerances(tol)
    generators = [as_cmatrix(g, 'generator') for g in generators]
    check_same_dimension(*generators)
    points = cartesian_product(*[range(depth + 1)] * len(generators))
    residuals = []
    for point in points:
        joint = expm(
            sum(k * g for k, g in zip(point, generators)), norm_bound
        ).value
        factors = [expm(k * g, norm_bound).value for k, g in zip(point, generators)]
        product = factors[0]
        for factor in factors[1:]:
            product = product @ factor
        scale = max(
            1.0, np.prod([np.linalg.norm(f, 2) for f in factors]),
            np.linalg.norm(joint, 2)
        )
        residuals.append(float(np.linalg.norm(joint - product, 2) / scale))
    return _report(ConditionKind.SEMIGROUP, (0, depth), points, residuals, tol)


def check_integral_spectrum(
    A : np.ndarray, B : np.ndarray, window : Optional[Window] = None,
    tol : Optional[Tolerances] = None, seed : int = 0
) -> Tuple[bool, pd.DataFrame]:
    """Whether ``kA + lB`` is diagonalizable with integer spectrum.

    Parameters
    ----------
    A, B : np.ndarray
        Square matrices of the same dimension.
    window : Optional[Window]
        Window for ``(k, l)``, a single window or a pair, by default
        ``(-3, 3)`` for both.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    Tuple[bool, pd.DataFrame]
        The verdict and a table with columns ``k``, ``l``,
        ``diagonalizable`` and ``integral``.
    """
    tol = resolve_tolerances(tol)
    A = as_cmatrix(A, 'A')
    B = as_cmatrix(B, 'B')
    check_same_dimension(A, B)
    points = _lattice(ConditionKind.TWO_SIDED4, window or (-3, 3))
    rows = []
    for k, l in points:
        matrix = k * A + l * B
        values = spectrum(matrix, tol, seed).values
        integral = bool(np.all(
            np.abs(values - np.round(values.real))
            <= tol.eps_cluster * (1.0 + np.abs(values))
        ))
        rows.append({
            'k': k, 'l': l,
            'diagonalizable': is_diagonalizable(matrix, tol, seed),
            'integral': integral,
        })
    table = pd.DataFrame(rows)
    holds = bool((table['diagonalizable'] & table['integral']).all())
    return holds, table


def _exponential_spectra(A, B, tol, seed, norm_bound):
    exp_a = expm(A, norm_bound).value
    exp_b = expm(B, norm_bound).value
    first = [v for v, _ in spectrum(exp_a, tol, seed).distinct(tol)]
    second = [v for v, _ in spectrum(exp_b, tol, seed).distinct(tol)]
    return exp_a, exp_b, first, second


def gamma_map(
    A : np.ndarray, B : np.ndarray, k : int,
    tol : Optional[Tolerances] = None, seed : int = 0,
    norm_bound : float = DEFAULT_NORM_BOUND
) -> GammaMap:
    """Table of ``gamma_k`` over distinct exponential eigenvalues."""
    tol = resolve_tolerances(tol)
    _, _, first, second = _exponential_spectra(
        as_cmatrix(A, 'A'), as_cmatrix(B, 'B'), tol, seed, norm_bound
    )
    table = [
        ((lam, mu), complex(lam ** k * mu)) for lam in first for mu in second
    ]
    return GammaMap(k, table)


def gamma_injectivity(
    A : np.ndarray, B : np.ndarray, k : int,
    tol : Optional[Tolerances] = None, seed : int = 0,
    norm_bound : float = DEFAULT_NORM_BOUND
) -> bool:
    """Whether ``gamma_k`` is one-to-one.

    Raises
    ------
    AmbiguousSeparation
        If two images are closer than ``10 * eps_cluster`` but not closer
        than ``eps_cluster``, relative to the image scale.
    """
    tol = resolve_tolerances(tol)
    images = gamma_map(A, B, k, tol, seed, norm_bound).images
    scale = magnitude(images)
    injective = True
    for i, j in combinations(range(len(images)), 2):
        gap = abs(images[i] - images[j])
        if gap < tol.eps_cluster * scale:
            injective = False
        elif gap < 10 * tol.eps_cluster * scale:
            raise AmbiguousSeparation(
                f"gamma_{k} images {images[i]} and {images[j]} are too close "
                "to decide."
            )
    return injective


def find_injective_k(
    A : np.ndarray, B : np.ndarray, kmax : int = DEFAULT_KMAX,
    tol : Optional[Tolerances] = None, seed : int = 0
) -> Optional[int]:
    """Smallest ``k`` in ``1..kmax`` with ``gamma_k`` one-to-one."""
    for k in range(1, kmax + 1):
        if gamma_injectivity(A, B, k, tol, seed):
            return k
    return None


def _rational_differences(
    A : np.ndarray, tol : Tolerances, qmax : int, seed : int
) -> List[Fraction]:
    values = [v for v, _ in spectrum(A, tol, seed).distinct(tol)]
    result = []
    for first, second in combinations(values, 2):
        ratio = (first - second) / TWO_PI_I
        bound = tol.eps_cluster * (1.0 + abs(ratio))
        if abs(ratio.imag) > bound:
            continue
        fraction = Fraction(ratio.real).limit_denominator(qmax)
        if abs(ratio.real - float(fraction)) <= bound:
            result.append(fraction)
    return result


def check_condition6(
    A : np.ndarray, tol : Optional[Tolerances] = None,
    qmax : int = DEFAULT_QMAX, seed : int = 0
) -> bool:
    """Whether eigenvalue differences in :math:`2i\\pi\\mathbb{Q}` lie in
    :math:`2i\\pi\\mathbb{Z}`.

    Rationality is detected for denominators up to ``qmax`` only; a
    difference that is not recognised is treated as irrational.

    Examples
    --------
    >>> check_condition6(np.diag([0, 1j * np.pi]))
    False

    """
    tol = resolve_tolerances(tol)
    A = as_cmatrix(A, 'A')
    return all(
        f.denominator == 1 for f in _rational_differences(A, tol, qmax, seed)
    )


def condition6_scaling(
    A : np.ndarray, tol : Optional[Tolerances] = None,
    qmax : int = DEFAULT_QMAX, seed : int = 0
) -> int:
    """Smallest ``p > 0`` making every recognised rational difference of
    eigenvalues an element of :math:`2i\\pi\\mathbb{Z}` after scaling."""
    tol = resolve_tolerances(tol)
    denominators = [
        f.denominator
        for f in _rational_differences(as_cmatrix(A, 'A'), tol, qmax, seed)
    ]
    return lcm(1, *denominators)


def rescale_for_condition6(
    A : np.ndarray, tol : Optional[Tolerances] = None,
    qmax : int = DEFAULT_QMAX, seed : int = 0
) -> Tuple[int, np.ndarray]:
    """The scaling integer ``p`` and the matrix ``pA``."""
    p = condition6_scaling(A, tol, qmax, seed)
    return p, p * as_cmatrix(A, 'A')


def shift_to_integral(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0
) -> Optional[Tuple[complex, complex]]:
    """Scalars ``alpha, beta`` with :math:`\\operatorname{Sp}(A - \\alpha I)`
    and :math:`\\operatorname{Sp}(B - \\beta I)` in :math:`2i\\pi\\mathbb{Z}`.

    Such scalars exist exactly when ``e^A`` and ``e^B`` each have a single
    eigenvalue; None is returned otherwise.
    """
    tol = resolve_tolerances(tol)
    shifts = []
    for matrix in (as_cmatrix(A, 'A'), as_cmatrix(B, 'B')):
        eigenvalues = spectrum(matrix, tol, seed)
        base = eigenvalues.values[0]
        ratios = eigenvalues.shifted(-base).values / TWO_PI_I
        gaps = np.abs(ratios - np.round(ratios.real))
        if np.any(gaps > tol.eps_cluster * (1.0 + np.abs(ratios))):
            return None
        shifts.append(complex(base))
    return shifts[0], shifts[1]


def _characteristic_decomposition(
    matrix : np.ndarray, tol : Tolerances, seed : int
) -> List[Tuple[complex, Subspace]]:
    return [
        (value, char_subspace(matrix, value, tol, seed))
        for value, _ in spectrum(matrix, tol, seed).distinct(tol)
    ]


def eq7_residuals(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0, norm_bound : float = DEFAULT_NORM_BOUND
) -> pd.DataFrame:
    """Distances between both sides of the characteristic subspace
    decomposition, one row per eigenvalue ``mu`` of ``e^B``.

    Raises
    ------
    HypothesisViolated
        If ``e^A`` and ``e^B`` do not commute or ``gamma_1`` is not
        one-to-one.
    """
    tol = resolve_tolerances(tol)
    A = as_cmatrix(A, 'A')
    B = as_cmatrix(B, 'B')
    check_same_dimension(A, B)
    exp_a, exp_b, first, second = _exponential_spectra(
        A, B, tol, seed, norm_bound
    )
    if not commutes(exp_a, exp_b, tol):
        raise HypothesisViolated("e^A and e^B do not commute.")
    if not gamma_injectivity(A, B, 1, tol, seed, norm_bound):
        raise HypothesisViolated("gamma_1 is not one-to-one.")
    product = exp_a @ exp_b
    n = A.shape[0]
    rows = []
    for mu in second:
        left = char_subspace(exp_b, mu, tol, seed)
        parts = []
        for lam in first:
            try:
                parts.append(char_subspace(product, lam * mu, tol, seed))
            except NotAnEigenvalue:
                parts.append(Subspace.zero(n))
        right = subspace_sum(parts, tol)
        rows.append({
            'mu': mu, 'left_dim': left.dim, 'right_dim': right.dim,
            'residual': subspace_distance(left, right),
        })
    return pd.DataFrame(rows)


def check_eq7(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0
) -> bool:
    """Whether every characteristic subspace of ``e^B`` splits along the
    characteristic subspaces of ``e^A e^B``.

    Subspaces are equal when their distance is below ``eps_cluster``.
    """
    tol = resolve_tolerances(tol)
    table = eq7_residuals(A, B, tol, seed)
    return bool((table['residual'] <= tol.eps_cluster).all())


def subspace_intersection(
    first : Subspace, second : Subspace, tol : Optional[Tolerances] = None
) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    tol = resolve_tolerances(tol)
    if first.dim == 0 or second.dim == 0:
        return Subspace.zero(first.ambient)
    stacked = np.hstack([first.basis, -second.basis])
    null = kernel(stacked, tol, scale=1.0)
    if null.dim == 0:
        return Subspace.zero(first.ambient)
    return orthonormal_basis(
        first.basis @ null.basis[:first.dim], tol, scale=1.0
    )


def _splits(
    parts : List[Subspace], tol : Tolerances
) -> List[Tuple[Subspace, Subspace]]:
    parts = [p for p in parts if p.dim]
    if len(parts) < 2:
        return []
    result = []
    rest = list(range(1, len(parts)))
    for size in range(0, len(rest)):
        for chosen in combinations(rest, size):
            left = [parts[0]] + [parts[i] for i in chosen]
            right = [parts[i] for i in rest if i not in chosen]
            result.append((subspace_sum(left, tol), subspace_sum(right, tol)))
    return result


def _is_splitting(
    F : Subspace, G : Subspace, matrices : Sequence[np.ndarray],
    tol : Tolerances
) -> bool:
    n = F.ambient
    if F.dim == 0 or G.dim == 0 or F.dim + G.dim != n:
        return False
    if orthonormal_basis(np.hstack([F.basis, G.basis]), tol, 1.0).dim != n:
        return False
    return all(
        s.invariance_residual(m) <= tol.eps_cluster
        for m in matrices for s in (F, G)
    )


def find_splitting(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0, norm_bound : float = DEFAULT_NORM_BOUND
) -> Optional[PairSplitting]:
    """Search a decomposition into two subspaces invariant under both
    matrices.

    Candidates are the sums of characteristic subspaces of ``A``, ``B``,
    ``e^A``, ``e^B`` and ``e^A e^B`` and of the intersections of the
    characteristic subspaces of ``A`` and ``B``. The search is not
    exhaustive: None does not prove the pair indecomposable.

    Returns
    -------
    Optional[PairSplitting]
        The first verified splitting, or None.
    """
    tol = resolve_tolerances(tol)
    A = as_cmatrix(A, 'A')
    B = as_cmatrix(B, 'B')
    check_same_dimension(A, B)
    n = A.shape[0]
    matrices = [A, B]
    try:
        exp_a = expm(A, norm_bound).value
        exp_b = expm(B, norm_bound).value
        matrices += [exp_a, exp_b, exp_a @ exp_b]
    except Overflow:
        logging.warning("Skipping exponential candidates for find_splitting")
    decompositions = [
        [s for _, s in _characteristic_decomposition(m, tol, seed)]
        for m in matrices
    ]
    cells = [
        subspace_intersection(f, g, tol)
        for f in decompositions[0] for g in decompositions[1]
    ]
    if sum(c.dim for c in cells) == n:
        decompositions.append(cells)
    for parts in decompositions:
        for F, G in _splits(parts, tol):
            if _is_splitting(F, G, (A, B), tol):
                return PairSplitting(F, G)
    return None


def check_refined_motzkin_taussky(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0
) -> MotzkinTausskyReport:
    """Evaluate the hypotheses of the commutation criterion for pairs with
    property L (``B`` diagonalizable and ``A + zB`` diagonalizable at every
    exceptional point) next to the conclusion ``AB = BA``."""
    tol = resolve_tolerances(tol)
    pencil = Pencil(A, B)
    family = property_L_pair(pencil.A, pencil.B, tol, seed)
    generic = profile(pencil, tol, seed)
    exceptional = {
        z: is_diagonalizable(pencil.at(z), tol, seed)
        for z in generic.exceptional_points
    }
    _, norm = commutator(pencil.A, pencil.B)
    scale = max(1.0, np.linalg.norm(pencil.A, 2) * np.linalg.norm(pencil.B, 2))
    return MotzkinTausskyReport(
        property_l=family is not None,
        b_diagonalizable=is_diagonalizable(pencil.B, tol, seed),
        exceptional=exceptional,
        commutes=norm <= tol.eps_verify * scale,
    )
