#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the analysis of the pencil :math:`z \\mapsto A + zB`.

**Generic count and exceptional points**

The pencil has :math:`p` distinct eigenvalues at all but finitely many
points. The exceptional points are among the roots of the discriminant

.. math::

    \\Delta(z) = \\prod_{i < j} (\\lambda_i(z) - \\lambda_j(z))^2

which is a polynomial in :math:`z` of degree at most :math:`n(n-1)`. Its
coefficients are recovered from samples on the circle :math:`|z| = \\rho` by
a discrete Fourier transform:

.. math::

    \\delta_j = \\frac{1}{N\\rho^j} \\sum_{k=0}^{N-1}
    \\Delta(\\rho\\omega^k)\\omega^{-jk}, \\quad \\omega = e^{2i\\pi/N}.

**Branches**

Around a point :math:`z_0` the eigenvalues are continued along the circle
:math:`z_0 + re^{i\\theta}`; after one loop they come back permuted. The
cycles of that permutation have lengths :math:`d_k` and each cycle is a
single analytic function of :math:`(z - z_0)^{1/d_k}` whose leading
coefficient is read off the Fourier coefficients of the concatenated cycle.

**Affine families**

A pair has property L when there are affine maps :math:`f_k(z) = c_k +
b_kz` with :math:`\\operatorname{OSp}(A + zB) = [f_1(z), \\ldots, f_n(z)]`.
Candidate families are fitted from two spectra and certified at more than
:math:`2n` random points, which exceeds the degree in :math:`z` of every
coefficient of the characteristic polynomial.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from pencillab.chevalley import EigenprojectionSet, eigenprojections
from pencillab.errors import (
    AmbiguousMatching, DegenerateDiscriminant, IllConditioned,
    TrackingAmbiguous
)
from pencillab.logs import timer
from pencillab.numcore import (
    CPoly, SpectrumMultiset, Tolerances, as_cmatrix, check_same_dimension,
    discriminant, magnitude, multiset_match, resolve_tolerances, roots,
    spectrum
)
from pencillab.utils import make_rng, random_disk_points

DISCRIMINANT_RADIUS = 1.0
DISCRIMINANT_TRIM = 1e-9
PROFILE_SAMPLES = 20
PROFILE_RADIUS = 10.0
BRANCH_RADIUS = 1e-2
BRANCH_ANGLES = 64
BRANCH_RETRIES = 5
VALIDATION_RADIUS = 2.0
REFINE_STEPS = 30


@dataclass(frozen=True, eq=False)
class Pencil:
    """The one-parameter family ``A + zB``.

    Parameters
    ----------
    A : np.ndarray
        Value at ``z = 0``.
    B : np.ndarray
        Direction.
    """
    A : np.ndarray
    B : np.ndarray

    def __post_init__(self) -> None:
        first = as_cmatrix(self.A, 'A')
        second = as_cmatrix(self.B, 'B')
        check_same_dimension(first, second)
        object.__setattr__(self, 'A', first)
        object.__setattr__(self, 'B', second)

    @property
    def n(self) -> int:
        """Matrix dimension."""
        return self.A.shape[0]

    def at(self, z : complex) -> np.ndarray:
        """The matrix ``A + zB``."""
        return self.A + z * self.B


@dataclass(frozen=True)
class PencilProfile:
    """Generic eigenvalue count and exceptional points of a pencil.

    Parameters
    ----------
    p : int
        Generic number of distinct eigenvalues.
    exceptional_points : List[complex]
        Confirmed exceptional points.
    samples_used : int
        Number of spectra computed.
    seed : int
        Seed of the random sample points.
    degenerate : bool
        True when the discriminant vanishes identically; the exceptional
        points are not searched in that case.
    """
    p : int
    exceptional_points : List[complex]
    samples_used : int
    seed : int
    degenerate : bool = False


@dataclass(frozen=True)
class BranchCycle:
    """One cycle of the monodromy around a point.

    Parameters
    ----------
    length : int
        Cycle length ``d``.
    value : complex
        Common eigenvalue of the cycle at the centre.
    leading_term : Optional[Tuple[complex, int]]
        ``(b, j)`` such that the branch is ``value + b (z - z0)^(j/d) + ...``;
        None when no term rises above the tolerance.
    members : Tuple[int, ...]
        Indices of the tracked eigenvalues forming the cycle.
    """
    length : int
    value : complex
    leading_term : Optional[Tuple[complex, int]]
    members : Tuple[int, ...] = ()

    @property
    def exponent(self) -> Optional[Fraction]:
        """Exponent ``j/d`` of the leading term."""
        if self.leading_term is None:
            return None
        return Fraction(self.leading_term[1], self.length)


@dataclass(frozen=True)
class BranchStructure:
    """Monodromy cycles of the eigenvalues around ``center``."""
    center : complex
    radius : float
    angles : int
    cycles : List[BranchCycle]

    @property
    def q(self) -> int:
        """Number of cycles."""
        return len(self.cycles)

    @property
    def lengths(self) -> List[int]:
        """Cycle lengths, in decreasing order."""
        return sorted((c.length for c in self.cycles), reverse=True)


@dataclass(frozen=True, eq=False)
class AffineFamily:
    """Eigenvalues given as affine or linear forms.

    Parameters
    ----------
    coefficients : np.ndarray
        In ``'affine'`` mode an ``(n, 2)`` array of ``(c_k, b_k)`` with
        ``f_k(z) = c_k + b_k z``. In ``'linear'`` mode an ``(n, r)`` array,
        row ``k`` holding the values of ``f_k`` on the basis.
    mode : str
        ``'affine'`` or ``'linear'``.
    basis : List[np.ndarray]
        Basis matrices of the span in ``'linear'`` mode.
    """
    coefficients : np.ndarray
    mode : str = 'affine'
    basis : List[np.ndarray] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in ('affine', 'linear'):
            raise ValueError(f"Unknown family mode {self.mode!r}.")
        coefficients = np.array(self.coefficients, dtype=np.complex128)
        if self.mode == 'affine' and coefficients.shape[1] != 2:
            raise ValueError("Affine forms need two coefficients each.")
        object.__setattr__(self, 'coefficients', coefficients)

    @property
    def n(self) -> int:
        """Number of forms."""
        return self.coefficients.shape[0]

    @property
    def forms(self) -> List[Tuple[complex, ...]]:
        """Coefficients of every form."""
        return [tuple(complex(c) for c in row) for row in self.coefficients]

    def evaluate(self, z) -> np.ndarray:
        """Values of all forms at ``z`` (a tuple of coordinates in
        ``'linear'`` mode)."""
        if self.mode == 'affine':
            return self.coefficients[:, 0] + self.coefficients[:, 1] * z
        return self.coefficients @ np.atleast_1d(
            np.asarray(z, dtype=np.complex128)
        )


@dataclass(frozen=True, eq=False)
class TrajectoryReport:
    """Eigenprojections along a list of regular points.

    Parameters
    ----------
    zs : List[complex]
        The points.
    sets : List[EigenprojectionSet]
        Eigenprojections at every point.
    labels : List[np.ndarray]
        ``labels[i][k]`` is the index in ``sets[i]`` of branch ``k``.
    deviations : np.ndarray
        Largest change of each branch projection between two points.
    """
    zs : List[complex]
    sets : List[EigenprojectionSet]
    labels : List[np.ndarray]
    deviations : np.ndarray

    @property
    def max_deviation(self) -> float:
        """Largest deviation over all branches."""
        return float(self.deviations.max()) if self.deviations.size else 0.0

    def projection(self, point : int, branch : int) -> np.ndarray:
        """Projection of ``branch`` at the ``point``-th z."""
        return self.sets[point].projections[self.labels[point][branch]]


def sample_spectrum(
    pencil : Pencil, z : complex, tol : Optional[Tolerances] = None,
    seed : int = 0
) -> SpectrumMultiset:
    """Eigenvalues of ``A + zB``."""
    return spectrum(pencil.at(z), tol, seed)


def sample_spectra(
    pencil : Pencil, zs : Sequence[complex],
    tol : Optional[Tolerances] = None, seed : int = 0, workers : int = 1
) -> List[SpectrumMultiset]:
    """Eigenvalues of ``A + zB`` for many ``z``, in input order.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    zs : Sequence[complex]
        Sample points.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.
    workers : int, optional
        Number of threads, by default 1.

    Returns
    -------
    List[SpectrumMultiset]
        One multiset per point.
    """
    if workers <= 1:
        return [sample_spectrum(pencil, z, tol, seed) for z in zs]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(
            lambda z: sample_spectrum(pencil, z, tol, seed), zs
        ))


def discriminant_coefficients(
    pencil : Pencil, tol : Optional[Tolerances] = None, seed : int = 0,
    workers : int = 1
) -> np.ndarray:
    """Coefficients of the discriminant of ``A + zB`` in ``z``.

    Returns
    -------
    np.ndarray
        Coefficients in increasing degree, trimmed above the last one larger
        than ``1e-9`` times the largest.

    Raises
    ------
    DegenerateDiscriminant
        If every sampled discriminant value is zero.
    """
    n = pencil.n
    degree = n * (n - 1)
    count = max(32, 1 << int(np.ceil(np.log2(degree + 1))))
    zs = DISCRIMINANT_RADIUS * np.exp(2j * np.pi * np.arange(count) / count)
    values = np.array([
        discriminant(s)
        for s in sample_spectra(pencil, zs, tol, seed, workers)
    ])
    coeffs = np.fft.fft(values) / count
    coeffs = coeffs[:degree + 1] / DISCRIMINANT_RADIUS ** np.arange(degree + 1)
    peak = np.abs(coeffs).max()
    if peak == 0:
        raise DegenerateDiscriminant(
            "The pencil has a multiple eigenvalue at every sample."
        )
    keep = np.flatnonzero(np.abs(coeffs) > DISCRIMINANT_TRIM * peak)
    return coeffs[:keep[-1] + 1]


def _closest_pair_gap(values : np.ndarray) -> complex:
    """Squared difference of the two closest eigenvalues."""
    i, j = np.triu_indices(len(values), k=1)
    gaps = values[i] - values[j]
    best = int(np.argmin(np.abs(gaps)))
    return complex(gaps[best] ** 2)


def refine_exceptional_point(
    pencil : Pencil, z : complex, tol : Optional[Tolerances] = None,
    seed : int = 0
) -> complex:
    """Polish an approximate exceptional point.

    Secant steps are taken on :math:`g/g'` where :math:`g` is the squared
    gap of the closest eigenvalue pair; the quotient has a simple root
    whether the pair crosses (double root of :math:`g`) or branches (simple
    root). The point with the smallest gap seen is returned.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    z : complex
        Starting estimate.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    complex
        The refined point, never worse than ``z`` in gap size.
    """
    tol = resolve_tolerances(tol)
    if pencil.n < 2:
        return complex(z)

    def gap(point):
        return _closest_pair_gap(sample_spectrum(pencil, point, tol, seed).values)

    def newton_ratio(point):
        h = 1e-6 * (1.0 + abs(point))
        slope = (gap(point + h) - gap(point - h)) / (2 * h)
        value = gap(point)
        return value, (value / slope if slope != 0 else 0j)

    best_z, best_gap = complex(z), abs(gap(z))
    if best_gap == 0:
        return best_z
    previous_z = best_z
    previous_ratio = newton_ratio(previous_z)[1]
    current_z = previous_z - previous_ratio
    for _ in range(REFINE_STEPS):
        value, ratio = newton_ratio(current_z)
        if abs(value) < best_gap:
            best_z, best_gap = current_z, abs(value)
        if value == 0 or ratio == previous_ratio:
            break
        step = ratio * (current_z - previous_z) / (ratio - previous_ratio)
        previous_z, previous_ratio = current_z, ratio
        current_z = current_z - step
        if abs(step) <= tol.eps_root * (1.0 + abs(current_z)):
            break
    return best_z


def _distinct_roots(coeffs : np.ndarray, tol : Tolerances, seed : int):
    poly = CPoly(coeffs[::-1])
    if poly.degree < 1:
        return []
    return [value for value, _ in roots(poly, tol, seed).distinct(tol)]


@timer
def profile(
    pencil : Pencil, tol : Optional[Tolerances] = None, seed : int = 0,
    samples : int = PROFILE_SAMPLES, radius : float = PROFILE_RADIUS,
    workers : int = 1
) -> PencilProfile:
    """Generic eigenvalue count and exceptional points.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Seed of the random sample points, by default 0.
    samples : int, optional
        Number of random points used for ``p`` (at least 20).
    radius : float, optional
        Radius of the sampling disk, by default 10.
    workers : int, optional
        Threads used for sampling.

    Returns
    -------
    PencilProfile
        The count, the confirmed exceptional points and sampling details.
    """
    tol = resolve_tolerances(tol)
    samples = max(samples, PROFILE_SAMPLES)
    zs = random_disk_points(make_rng(seed), samples, radius)
    spectra = sample_spectra(pencil, zs, tol, seed, workers)
    p = max(s.distinct_count(tol) for s in spectra)
    used = samples
    try:
        if p < pencil.n:
            raise DegenerateDiscriminant(f"p = {p} < n = {pencil.n}")
        coeffs = discriminant_coefficients(pencil, tol, seed, workers)
    except DegenerateDiscriminant as exc:
        logging.warning(
            "Discriminant vanishes identically (%s); exceptional points are "
            "not searched", exc
        )
        return PencilProfile(p, [], used, seed, degenerate=True)
    used += max(
        32, 1 << int(np.ceil(np.log2(pencil.n * (pencil.n - 1) + 1)))
    )
    confirmed : List[complex] = []
    for candidate in _distinct_roots(coeffs, tol, seed):
        point = refine_exceptional_point(pencil, candidate, tol, seed)
        used += 1
        if sample_spectrum(pencil, point, tol, seed).distinct_count(tol) >= p:
            logging.debug("Discriminant root %s is not exceptional", point)
            continue
        scale = tol.eps_cluster * (1.0 + abs(point))
        if all(abs(point - other) > scale for other in confirmed):
            confirmed.append(point)
    confirmed.sort(key=lambda z: (z.real, z.imag))
    logging.info(
        "Pencil has p = %d and %d exceptional points", p, len(confirmed)
    )
    return PencilProfile(p, confirmed, used, seed)


def regular_points(
    pencil : Pencil, generic : PencilProfile, count : int,
    tol : Optional[Tolerances] = None, seed : int = 0,
    radius : float = PROFILE_RADIUS
) -> List[complex]:
    """Draw ``count`` seeded random points where the pencil is regular."""
    rng = make_rng(seed)
    points : List[complex] = []
    for _ in range(100 * count):
        z = complex(random_disk_points(rng, 1, radius)[0])
        if sample_spectrum(pencil, z, tol, seed).distinct_count(tol) == generic.p:
            points.append(z)
            if len(points) == count:
                return points
    raise IllConditioned("Could not draw enough regular points.")


def _assign(
    predicted : np.ndarray, candidates : np.ndarray, tol : Tolerances
) -> np.ndarray:
    cost = np.abs(predicted[:, None] - candidates[None, :])
    _, cols = linear_sum_assignment(cost)
    scale = magnitude(candidates)
    same = np.abs(
        candidates[:, None] - candidates[None, :]
    ) <= tol.eps_cluster * scale
    for i, j in enumerate(cols):
        others = cost[i][~same[j]]
        if others.size and others.min() < 2 * cost[i, j]:
            raise TrackingAmbiguous(
                f"Eigenvalue {predicted[i]} has two continuation candidates."
            )
    return candidates[cols]


def track_eigenvalues(
    pencil : Pencil, zs : Sequence[complex],
    tol : Optional[Tolerances] = None, seed : int = 0, workers : int = 1
) -> np.ndarray:
    """Continue the eigenvalues along a path.

    Each step predicts the next values by linear extrapolation and assigns
    the computed spectrum to the predictions by minimum total distance.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    zs : Sequence[complex]
        Points of the path, closely spaced.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.
    workers : int, optional
        Threads used for sampling.

    Returns
    -------
    np.ndarray
        Array of shape ``(len(zs), n)``; column ``k`` is one continuous
        eigenvalue branch.

    Raises
    ------
    TrackingAmbiguous
        If a step has two comparable continuation candidates.
    """
    tol = resolve_tolerances(tol)
    spectra = sample_spectra(pencil, zs, tol, seed, workers)
    track = np.empty((len(zs), pencil.n), dtype=np.complex128)
    track[0] = spectra[0].values
    for k in range(1, len(zs)):
        if k == 1:
            predicted = track[0]
        else:
            predicted = 2 * track[k - 1] - track[k - 2]
        track[k] = _assign(predicted, spectra[k].values, tol)
    return track


def _permutation_cycles(sigma : np.ndarray) -> List[Tuple[int, ...]]:
    seen = set()
    cycles = []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cycle = []
        index = start
        while index not in seen:
            seen.add(index)
            cycle.append(index)
            index = int(sigma[index])
        cycles.append(tuple(cycle))
    return cycles


def _leading_term(
    samples : np.ndarray, length : int, radius : float, tol : Tolerances
) -> Tuple[complex, Optional[Tuple[complex, int]]]:
    coeffs = np.fft.fft(samples) / len(samples)
    threshold = tol.eps_cluster * magnitude(samples)
    for j in range(1, len(samples) // 2):
        if abs(coeffs[j]) > threshold:
            return complex(coeffs[0]), (
                complex(coeffs[j] / radius ** (j / length)), j
            )
    return complex(coeffs[0]), None


@timer
def branch_structure(
    pencil : Pencil, center : complex, tol : Optional[Tolerances] = None,
    seed : int = 0, radius : float = BRANCH_RADIUS,
    angles : int = BRANCH_ANGLES, retries : int = BRANCH_RETRIES
) -> BranchStructure:
    """Monodromy of the eigenvalues around a point.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    center : complex
        Point of interest, typically exceptional.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.
    radius : float, optional
        Loop radius, by default 1e-2; halved on every retry.
    angles : int, optional
        Samples per loop, at least 64; doubled on every retry.
    retries : int, optional
        Number of retries on ambiguous tracking, by default 5.

    Returns
    -------
    BranchStructure
        The monodromy cycles with their leading terms.

    Raises
    ------
    TrackingAmbiguous
        If tracking stays ambiguous after all retries.
    """
    tol = resolve_tolerances(tol)
    angles = max(angles, BRANCH_ANGLES)
    for attempt in range(retries + 1):
        thetas = 2 * np.pi * np.arange(angles + 1) / angles
        zs = center + radius * np.exp(1j * thetas)
        try:
            track = track_eigenvalues(pencil, zs, tol, seed)
            break
        except TrackingAmbiguous as exc:
            if attempt == retries:
                raise
            logging.warning(
                "Branch tracking around %s ambiguous (%s); retrying with "
                "radius %.3g", center, exc, radius / 2
            )
            radius /= 2
            angles *= 2
    cost = np.abs(track[-1][:, None] - track[0][None, :])
    _, sigma = linear_sum_assignment(cost)
    cycles = []
    for members in _permutation_cycles(sigma):
        samples = np.concatenate([track[:-1, k] for k in members])
        value, leading = _leading_term(samples, len(members), radius, tol)
        cycles.append(BranchCycle(len(members), value, leading, members))
    return BranchStructure(complex(center), radius, angles, cycles)


def _fit_family(
    start : np.ndarray, end : np.ndarray, checkpoints : Sequence[complex],
    checkpoint_spectra : Sequence[np.ndarray], forbidden : Optional[Tuple] = None
) -> Tuple[np.ndarray, np.ndarray, float]:
    """Assign ``end`` values to ``start`` values.

    Returns the assignment, the slopes and the total cost.
    """
    cost = np.zeros((len(start), len(end)))
    for z, observed in zip(checkpoints, checkpoint_spectra):
        predicted = start[:, None] + (end[None, :] - start[:, None]) * z
        cost += np.abs(predicted[..., None] - observed).min(axis=-1)
    if forbidden is not None:
        cost[forbidden] = 1e300
    rows, cols = linear_sum_assignment(cost)
    return cols, end[cols] - start, float(cost[rows, cols].sum())


def _certify(
    family : AffineFamily, pencil : Pencil, points : Sequence[complex],
    tol : Tolerances, seed : int
) -> bool:
    for z in points:
        observed = sample_spectrum(pencil, z, tol, seed)
        if multiset_match(family.evaluate(z), observed, tol) is None:
            logging.debug("Affine family fails at z = %s", z)
            return False
    return True


def _same_forms(first : AffineFamily, second : AffineFamily, tol) -> bool:
    # Forms compared as points (c + b * w) at an irrational point.
    point = np.sqrt(2) + 1j * np.sqrt(3)
    return multiset_match(
        first.evaluate(point), second.evaluate(point), tol
    ) is not None


@timer
def property_L_pair(
    A : np.ndarray, B : np.ndarray, tol : Optional[Tolerances] = None,
    seed : int = 0, validation_points : Optional[int] = None
) -> Optional[AffineFamily]:
    """Certify property L for a pair.

    Parameters
    ----------
    A, B : np.ndarray
        Square matrices of the same dimension.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Seed of the checkpoints and validation points.
    validation_points : Optional[int]
        Number of certification points, at least ``2n + 1``.

    Returns
    -------
    Optional[AffineFamily]
        The certified family, or None.

    Raises
    ------
    AmbiguousMatching
        If a second assignment of almost the same cost gives a different
        verdict.
    """
    tol = resolve_tolerances(tol)
    pencil = Pencil(A, B)
    n = pencil.n
    count = max(validation_points or 0, 2 * n + 1)
    rng = make_rng(seed)
    checkpoints = random_disk_points(rng, 2, VALIDATION_RADIUS)
    points = random_disk_points(rng, count, VALIDATION_RADIUS)
    start = sample_spectrum(pencil, 0, tol, seed).values
    end = sample_spectrum(pencil, 1, tol, seed).values
    observed = [sample_spectrum(pencil, z, tol, seed).values for z in checkpoints]

    best_cols, slopes, best_cost = _fit_family(start, end, checkpoints, observed)
    family = AffineFamily(np.column_stack([start, slopes]))
    verdict = _certify(family, pencil, points, tol, seed)

    # Second best assignments: forbid one edge of the best one at a time.
    threshold = tol.eps_cluster * magnitude(start, end)
    for i in range(n):
        _, other_slopes, cost = _fit_family(
            start, end, checkpoints, observed, forbidden=(i, best_cols[i])
        )
        if cost - best_cost > threshold:
            continue
        other = AffineFamily(np.column_stack([start, other_slopes]))
        if _same_forms(family, other, tol):
            continue
        if _certify(other, pencil, points, tol, seed) != verdict:
            raise AmbiguousMatching(
                "Two assignments of equal cost give different verdicts."
            )
    return family if verdict else None


def _basis_indices(
    generators : Sequence[np.ndarray], tol : Tolerances
) -> List[int]:
    vectors = np.column_stack([g.ravel() for g in generators])
    _, r, pivots = scipy.linalg.qr(vectors, pivoting=True, mode='economic')
    diag = np.abs(np.diag(r))
    if not diag.size or diag[0] == 0:
        return []
    rank = int(np.count_nonzero(diag > tol.eps_rank * diag[0]))
    return sorted(int(i) for i in pivots[:rank])


@timer
def property_L_span(
    generators : Sequence[np.ndarray], tol : Optional[Tolerances] = None,
    seed : int = 0, validation_points : Optional[int] = None
) -> Optional[AffineFamily]:
    """Certify property L for the span of several matrices.

    The generators are reduced to a basis ``A_1, ..., A_r``. The forms are
    fixed on ``A_1`` by its spectrum and extended one basis element at a
    time: the pair ``(S, A_j)`` with ``S`` a weighted partial sum of the
    previous elements (positive rational weights) is fitted by
    :func:`property_L_pair` and its constants are aligned with the values
    of the current forms on ``S``.

    Parameters
    ----------
    generators : Sequence[np.ndarray]
        At least one square matrix, all of the same dimension.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Seed of weights and validation points.
    validation_points : Optional[int]
        Number of certification tuples, at least ``2n + 1``.

    Returns
    -------
    Optional[AffineFamily]
        A family in ``'linear'`` mode, or None.
    """
    tol = resolve_tolerances(tol)
    if not generators:
        raise ValueError("At least one generator is needed.")
    generators = [as_cmatrix(g, 'generator') for g in generators]
    n = check_same_dimension(*generators)
    index = _basis_indices(generators, tol)
    basis = [generators[i] for i in index]
    if not basis:
        return AffineFamily(np.zeros((n, 0)), 'linear', [])

    rng = make_rng(seed)
    coefficients = np.zeros((n, len(basis)), dtype=np.complex128)
    coefficients[:, 0] = spectrum(basis[0], tol, seed).values
    for j in range(1, len(basis)):
        weights = np.array([
            float(Fraction(int(a), int(b)))
            for a, b in rng.integers(1, 10, size=(j, 2))
        ])
        partial = sum(w * m for w, m in zip(weights, basis[:j]))
        pair = property_L_pair(partial, basis[j], tol, seed, validation_points)
        if pair is None:
            logging.info("Partial sum and generator %d lack property L", j)
            return None
        current = coefficients[:, :j] @ weights
        cost = np.abs(current[:, None] - pair.coefficients[None, :, 0])
        rows, cols = linear_sum_assignment(cost)
        if np.any(cost[rows, cols] > tol.eps_cluster * magnitude(current)):
            return None
        coefficients[:, j] = pair.coefficients[cols, 1]

    family = AffineFamily(coefficients, 'linear', basis)
    count = max(validation_points or 0, 2 * n + 1)
    for _ in range(count):
        z = random_disk_points(rng, len(basis), VALIDATION_RADIUS)
        matrix = sum(c * m for c, m in zip(z, basis))
        if multiset_match(
            family.evaluate(z), spectrum(matrix, tol, seed), tol
        ) is None:
            logging.debug("Linear family fails at %s", z)
            return None
    return family


def eigenprojection_trajectory(
    pencil : Pencil, zs : Sequence[complex],
    tol : Optional[Tolerances] = None, seed : int = 0
) -> TrajectoryReport:
    """Eigenprojections of ``A + zB`` with branch consistent labels.

    Parameters
    ----------
    pencil : Pencil
        The pencil.
    zs : Sequence[complex]
        Regular points.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    TrajectoryReport
        Projections, labels and per-branch deviations.

    Raises
    ------
    IllConditioned
        If the number of projections changes along the points.
    """
    tol = resolve_tolerances(tol)
    zs = [complex(z) for z in zs]
    sets = [eigenprojections(pencil.at(z), tol, seed) for z in zs]
    count = len(sets[0])
    if any(len(s) != count for s in sets):
        raise IllConditioned(
            "Number of eigenprojections changes along the points."
        )
    labels = [np.arange(count)]
    for previous, current in zip(sets, sets[1:]):
        reference = [previous.projections[k] for k in labels[-1]]
        cost = np.array([
            [np.linalg.norm(p - q) for q in current.projections]
            for p in reference
        ])
        _, cols = linear_sum_assignment(cost)
        labels.append(cols)
    deviations = np.zeros(count)
    for branch in range(count):
        mats = [s.projections[l[branch]] for s, l in zip(sets, labels)]
        for i, first in enumerate(mats):
            for second in mats[i + 1:]:
                deviations[branch] = max(
                    deviations[branch], np.linalg.norm(first - second, 2)
                )
    return TrajectoryReport(zs, sets, labels, deviations)


def collision_points(
    family : AffineFamily, tol : Optional[Tolerances] = None
) -> List[complex]:
    """Points where two distinct affine forms take the same value."""
    tol = resolve_tolerances(tol)
    if family.mode != 'affine':
        raise ValueError("Collision points need an affine family.")
    constants, slopes = family.coefficients.T
    scale = magnitude(constants, slopes)
    points : List[complex] = []
    for i in range(family.n):
        for j in range(i + 1, family.n):
            gap = slopes[i] - slopes[j]
            if abs(gap) <= tol.eps_cluster * scale:
                continue
            z = complex(-(constants[i] - constants[j]) / gap)
            if all(abs(z - w) > tol.eps_cluster * (1 + abs(z)) for w in points):
                points.append(z)
    return sorted(points, key=lambda z: (z.real, z.imag))


def exceptional_integers(
    family : AffineFamily, tol : Optional[Tolerances] = None
) -> List[int]:
    """Integers ``k`` with ``f_i(k) = f_j(k)`` for two distinct forms.

    Examples
    --------
    >>> exceptional_integers(AffineFamily([[0, 1], [1, -1]]))
    []

    """
    tol = resolve_tolerances(tol)
    result = set()
    for z in collision_points(family, tol):
        k = int(np.round(z.real))
        if abs(z - k) <= tol.eps_cluster * (1 + abs(z)):
            result.add(k)
    return sorted(result)
