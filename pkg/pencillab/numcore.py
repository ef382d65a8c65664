#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the dense complex linear algebra every other module
is built on: characteristic polynomials, polynomial roots, spectra,
numerical kernels and subspaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (validated by
:func:`as_cmatrix`) and scalars are Python ``complex`` numbers.

**Characteristic polynomial**

The coefficients of :math:`\\chi_M(X) = \\det(XI_n - M) = X^n + c_1X^{n-1} +
\\cdots + c_n` follow from the Faddeev-LeVerrier recurrence

.. math::

    M_0 = 0, \\quad M_k = M M_{k-1} + c_{k-1} I_n, \\quad
    c_k = -\\frac{1}{k}\\operatorname{tr}(M M_k), \\quad c_0 = 1.

The recurrence runs on :math:`M/s` with :math:`s` a power of two close to
:math:`\\|M\\|_1`, and the coefficients are rescaled by :math:`s^k`.

**Roots**

Roots are found by Aberth-Ehrlich simultaneous iteration

.. math::

    z_i \\leftarrow z_i - \\frac{p(z_i)}{p'(z_i) - p(z_i)
    \\sum_{j \\neq i} \\frac{1}{z_i - z_j}}

started on a circle of radius :math:`1 + \\max_k |c_k|` with golden-angle
phases. A root of multiplicity :math:`m` is only determined to
:math:`O(\\eta^{1/m})` by a perturbation :math:`\\eta` of the coefficients,
so clusters are merged with a multiplicity dependent radius

.. math::

    r_m = (1 + \\max|\\lambda|)\\,\\max(\\varepsilon_{cluster},
    \\varepsilon_{root}^{1/m})

and every merged cluster of size :math:`m` is replaced by its mean, polished
as the simple root of :math:`p^{(m-1)}` next to it; the mean of a cluster is
accurate to :math:`O(\\eta)`. The approach is meant for desk-scale problems,
:math:`n \\le 12` or so; beyond that the characteristic polynomial loses
too many digits.
"""
import logging
from dataclasses import dataclass, replace
from math import factorial
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from pencillab.errors import NonConvergence
from pencillab.utils import check_positive, make_rng

TWO_PI_I = 2j * np.pi
GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))
UNIT_ROUNDOFF = np.finfo(float).eps
MAX_DIMENSION = 64

ArrayLike = Union[np.ndarray, Sequence]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by all analyses.

    Parameters
    ----------
    eps_root : float
        Convergence threshold of the root finder.
    eps_rank : float
        Rank threshold, relative to the largest column norm.
    eps_cluster : float
        Two eigenvalues are identical when closer than
        ``eps_cluster * (1 + max|lambda|)``.
    eps_verify : float
        Threshold on relative residuals of matrix equations.
    max_iter : int
        Iteration cap of every iterative procedure.
    """
    eps_root : float = 1e-12
    eps_rank : float = 1e-9
    eps_cluster : float = 1e-7
    eps_verify : float = 1e-9
    max_iter : int = 500

    def __post_init__(self) -> None:
        check_positive(
            self.eps_root, self.eps_rank, self.eps_cluster, self.eps_verify,
            self.max_iter
        )
        if self.eps_cluster < self.eps_root:
            raise ValueError("eps_cluster must not be smaller than eps_root.")

    def replace(self, **changes) -> 'Tolerances':
        """Return a copy with some thresholds changed."""
        return replace(self, **changes)

    def cluster_radius(self, multiplicity : int, scale : float) -> float:
        """Distance below which ``multiplicity`` roots count as one.

        Parameters
        ----------
        multiplicity : int
            Size of the candidate cluster.
        scale : float
            Magnitude scale ``1 + max|lambda|``.

        Returns
        -------
        float
            The merge radius.
        """
        if multiplicity <= 1:
            return self.eps_cluster * scale
        return scale * max(
            self.eps_cluster, self.eps_root ** (1.0 / multiplicity)
        )


DEFAULT_TOLERANCES = Tolerances()


def resolve_tolerances(tol : Optional[Tolerances]) -> Tolerances:
    """Return ``tol`` or the package defaults."""
    return DEFAULT_TOLERANCES if tol is None else tol


def as_cmatrix(matrix : ArrayLike, name : str = 'M') -> np.ndarray:
    """Validate and convert input to a square complex matrix.

    Parameters
    ----------
    matrix : ArrayLike
        Nested sequence or array.
    name : str, optional
        Name used in error messages.

    Returns
    -------
    np.ndarray
        A new ``complex128`` array of shape ``(n, n)``.

    Raises
    ------
    ValueError
        If the input is not square, empty, too large or not finite.
    """
    array = np.array(matrix, dtype=np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got {array.shape}.")
    if array.shape[0] < 1:
        raise ValueError(f"{name} must have dimension at least 1.")
    if array.shape[0] > MAX_DIMENSION:
        raise ValueError(
            f"{name} has dimension {array.shape[0]} > {MAX_DIMENSION}."
        )
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} has non-finite entries.")
    return array


def check_same_dimension(*matrices : np.ndarray) -> int:
    """Ensure matrices share their dimension and return it.

    Raises
    ------
    ValueError
        If dimensions differ.
    """
    dims = {m.shape[0] for m in matrices}
    if len(dims) != 1:
        raise ValueError(f"Matrices have different dimensions {sorted(dims)}.")
    return dims.pop()


def magnitude(*arrays : ArrayLike) -> float:
    """Scale ``1 + max|x|`` over all entries of the given arrays."""
    peak = 0.0
    for array in arrays:
        values = np.abs(np.asarray(array))
        if values.size:
            peak = max(peak, float(values.max()))
    return 1.0 + peak


def canonical_order(values : ArrayLike) -> np.ndarray:
    """Indices sorting complex values by ``(re, im)``.

    Parts are compared on a grid of ``eps_cluster`` times the scale of the
    values, so rounding noise and the sign of a zero do not change the
    order; ties keep their input order.
    """
    values = np.atleast_1d(np.asarray(values, dtype=np.complex128))
    quantum = DEFAULT_TOLERANCES.eps_cluster * magnitude(values)
    return np.lexsort((
        np.round(values.imag / quantum), np.round(values.real / quantum)
    ))


def _power_of_two_scale(matrix : np.ndarray) -> float:
    norm = np.linalg.norm(matrix, 1)
    if norm <= 1.0:
        return 1.0
    return 2.0 ** np.round(np.log2(norm))


@dataclass(frozen=True, eq=False)
class CPoly:
    """Polynomial with complex coefficients, highest degree first.

    Parameters
    ----------
    coeffs : ArrayLike
        Coefficients ``[a_d, ..., a_1, a_0]``; exact leading zeros are
        stripped, the zero polynomial is ``[0]``.
    """
    coeffs : np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.atleast_1d(np.array(self.coeffs, dtype=np.complex128))
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Polynomial coefficients must be finite.")
        nonzero = np.flatnonzero(coeffs)
        coeffs = coeffs[nonzero[0]:] if nonzero.size else np.zeros(1, complex)
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def degree(self) -> int:
        """Degree, ``len(coeffs) - 1``."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return self.degree == 0 and self.coeffs[0] == 0

    @property
    def is_monic(self) -> bool:
        """Whether the leading coefficient is exactly one."""
        return self.coeffs[0] == 1

    def __call__(self, z : ArrayLike) -> np.ndarray:
        return np.polyval(self.coeffs, z)

    def derivative(self) -> 'CPoly':
        """First derivative."""
        if self.degree == 0:
            return CPoly([0])
        return CPoly(np.polyder(self.coeffs))

    def monic(self) -> 'CPoly':
        """Polynomial divided by its leading coefficient."""
        if self.is_zero:
            raise ValueError("The zero polynomial has no monic form.")
        return CPoly(self.coeffs / self.coeffs[0])

    @classmethod
    def from_roots(cls, values : ArrayLike) -> 'CPoly':
        """Monic polynomial with the given roots."""
        return cls(np.poly(np.asarray(values, dtype=np.complex128)))


@dataclass(frozen=True, eq=False)
class SpectrumMultiset:
    """Multiset of eigenvalues stored in canonical ``(re, im)`` order.

    Parameters
    ----------
    values : ArrayLike
        The eigenvalues with multiplicity.
    """
    values : np.ndarray

    def __post_init__(self) -> None:
        values = np.atleast_1d(np.array(self.values, dtype=np.complex128))
        object.__setattr__(self, 'values', values[canonical_order(values)])

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def scale(self) -> float:
        """Magnitude scale ``1 + max|lambda|``."""
        return magnitude(self.values)

    def distinct(
        self, tol : Optional[Tolerances] = None
    ) -> List[Tuple[complex, int]]:
        """Distinct eigenvalues with their algebraic multiplicity.

        Parameters
        ----------
        tol : Optional[Tolerances]
            Clustering thresholds.

        Returns
        -------
        List[Tuple[complex, int]]
            ``(centroid, multiplicity)`` pairs in canonical order.
        """
        clusters = cluster_values(self.values, tol)
        pairs = [
            (complex(self.values[idx].mean()), len(idx)) for idx in clusters
        ]
        order = canonical_order([value for value, _ in pairs])
        return [pairs[i] for i in order]

    def distinct_count(self, tol : Optional[Tolerances] = None) -> int:
        """Number of distinct eigenvalues."""
        return len(cluster_values(self.values, tol))

    def matches(
        self, other : ArrayLike, tol : Optional[Tolerances] = None
    ) -> bool:
        """Whether both multisets agree under :func:`multiset_match`."""
        return multiset_match(self, other, tol) is not None

    def shifted(self, offset : complex) -> 'SpectrumMultiset':
        """Multiset of ``lambda + offset``."""
        return SpectrumMultiset(self.values + offset)


def _values_of(spectrum : Union[SpectrumMultiset, ArrayLike]) -> np.ndarray:
    if isinstance(spectrum, SpectrumMultiset):
        return spectrum.values
    return np.atleast_1d(np.asarray(spectrum, dtype=np.complex128))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of :math:`\\mathbb{C}^n` with an orthonormal basis.

    Parameters
    ----------
    basis : np.ndarray
        Matrix of shape ``(n, dim)`` with orthonormal columns.
    """
    basis : np.ndarray

    def __post_init__(self) -> None:
        basis = np.array(self.basis, dtype=np.complex128)
        if basis.ndim != 2:
            raise ValueError("A subspace basis must be a 2-D array.")
        object.__setattr__(self, 'basis', basis)

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return self.basis.shape[1]

    @property
    def ambient(self) -> int:
        """Dimension ``n`` of the ambient space."""
        return self.basis.shape[0]

    @classmethod
    def zero(cls, n : int) -> 'Subspace':
        """The null subspace of :math:`\\mathbb{C}^n`."""
        return cls(np.zeros((n, 0), dtype=np.complex128))

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace."""
        return self.basis @ self.basis.conj().T

    def residual(self, vectors : np.ndarray) -> float:
        """Norm of the part of ``vectors`` lying outside the subspace."""
        vectors = np.asarray(vectors, dtype=np.complex128)
        if vectors.size == 0:
            return 0.0
        outside = vectors - self.basis @ (self.basis.conj().T @ vectors)
        return float(np.linalg.norm(outside, 2))

    def invariance_residual(self, matrix : np.ndarray) -> float:
        """Relative size of ``matrix @ basis`` outside the subspace."""
        if self.dim == 0:
            return 0.0
        scale = max(float(np.linalg.norm(matrix, 2)), 1e-300)
        return self.residual(matrix @ self.basis) / scale


def subspace_distance(first : Subspace, second : Subspace) -> float:
    """Largest residual of either basis with respect to the other subspace.

    Zero exactly when both subspaces coincide; infinite when dimensions
    differ.
    """
    if first.dim != second.dim:
        return float('inf')
    return max(first.residual(second.basis), second.residual(first.basis))


def orthonormal_basis(
    vectors : np.ndarray, tol : Optional[Tolerances] = None,
    scale : Optional[float] = None
) -> Subspace:
    """Orthonormal basis of the span of the columns of ``vectors``.

    Parameters
    ----------
    vectors : np.ndarray
        Matrix of shape ``(n, k)``.
    tol : Optional[Tolerances]
        Rank threshold.
    scale : Optional[float]
        Absolute reference for the rank threshold; by default the largest
        column norm.

    Returns
    -------
    Subspace
        The column span.
    """
    tol = resolve_tolerances(tol)
    vectors = np.asarray(vectors, dtype=np.complex128)
    n = vectors.shape[0]
    if vectors.shape[1] == 0:
        return Subspace.zero(n)
    q, r, _ = scipy.linalg.qr(vectors, pivoting=True, mode='economic')
    rank = _numerical_rank(np.abs(np.diag(r)), tol, scale)
    return Subspace(q[:, :rank])


def subspace_sum(
    subspaces : Sequence[Subspace], tol : Optional[Tolerances] = None
) -> Subspace:
    """Sum of subspaces of the same ambient space."""
    n = subspaces[0].ambient
    blocks = [s.basis for s in subspaces if s.dim]
    if not blocks:
        return Subspace.zero(n)
    return orthonormal_basis(np.hstack(blocks), tol, scale=1.0)


def _numerical_rank(
    pivots : np.ndarray, tol : Tolerances, scale : Optional[float]
) -> int:
    reference = pivots[0] if pivots.size else 0.0
    if scale is not None:
        reference = max(reference, scale)
    if reference == 0.0:
        return 0
    return int(np.count_nonzero(pivots > tol.eps_rank * reference))


def _faddeev_leverrier(matrix : np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    identity = np.eye(n, dtype=np.complex128)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    current = np.zeros_like(matrix)
    for k in range(1, n + 1):
        current = matrix @ current + coeffs[k - 1] * identity
        coeffs[k] = -np.trace(matrix @ current) / k
    return coeffs


def charpoly(matrix : ArrayLike) -> CPoly:
    """Characteristic polynomial :math:`\\det(XI_n - M)`.

    Parameters
    ----------
    matrix : ArrayLike
        Square complex matrix.

    Returns
    -------
    CPoly
        Monic polynomial of degree ``n``.

    Examples
    --------
    >>> charpoly([[0, 1], [0, 0]]).coeffs
    array([1.+0.j, 0.+0.j, 0.+0.j])

    """
    matrix = as_cmatrix(matrix)
    scale = _power_of_two_scale(matrix)
    coeffs = _faddeev_leverrier(matrix / scale)
    coeffs *= scale ** np.arange(len(coeffs))
    return CPoly(coeffs)


def _initial_guesses(
    coeffs : np.ndarray, rng : np.random.Generator
) -> np.ndarray:
    degree = len(coeffs) - 1
    radius = 1.0 + np.abs(coeffs[1:]).max()
    jitter = rng.uniform(-0.1, 0.1, degree)
    phases = GOLDEN_ANGLE * np.arange(degree) + jitter + 0.25
    return radius * np.exp(1j * phases)


def _aberth(
    coeffs : np.ndarray, tol : Tolerances, rng : np.random.Generator
) -> np.ndarray:
    """Aberth-Ehrlich iteration on a monic polynomial of degree >= 2."""
    degree = len(coeffs) - 1
    derivative = np.polyder(coeffs)
    abs_coeffs = np.abs(coeffs)
    z = _initial_guesses(coeffs, rng)
    active = np.ones(degree, dtype=bool)
    for _ in range(tol.max_iter):
        values = np.polyval(coeffs, z)
        slopes = np.polyval(derivative, z)
        bound = 8 * degree * UNIT_ROUNDOFF * np.polyval(abs_coeffs, np.abs(z))
        active &= np.abs(values) > bound
        if not active.any():
            return z
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide='ignore', invalid='ignore'):
            inverse = np.where(diff == 0, 0.0, 1.0 / diff)
            np.fill_diagonal(inverse, 0.0)
            denominator = slopes - values * inverse.sum(axis=1)
            step = np.where(denominator == 0, 0.0, values / denominator)
        stalled = active & (denominator == 0)
        if stalled.any():
            # Kick roots sitting on a critical point.
            step[stalled] = tol.eps_root * (1.0 + np.abs(z[stalled])) * 1e3
        step[~active] = 0.0
        z = z - step
        active &= np.abs(step) > tol.eps_root * (1.0 + np.abs(z))
        if not active.any():
            return z
    raise NonConvergence(
        f"Aberth iteration did not converge in {tol.max_iter} iterations."
    )


def cluster_values(
    values : ArrayLike, tol : Optional[Tolerances] = None
) -> List[np.ndarray]:
    """Group values that represent the same (possibly multiple) root.

    Candidate sizes are tried from the largest down. A value and its
    ``m - 1`` nearest unassigned neighbours form a cluster when their
    diameter is within :meth:`Tolerances.cluster_radius` for ``m``; the
    members are removed and the search goes on. Values left over are
    singletons.

    Parameters
    ----------
    values : ArrayLike
        Complex values.
    tol : Optional[Tolerances]
        Clustering thresholds.

    Returns
    -------
    List[np.ndarray]
        Index arrays, one per cluster, ordered by first index.
    """
    tol = resolve_tolerances(tol)
    values = _values_of(values)
    scale = magnitude(values)
    dist = np.abs(values[:, None] - values[None, :])
    remaining = list(range(len(values)))
    clusters = []
    for size in range(len(values), 1, -1):
        radius = tol.cluster_radius(size, scale)
        found = True
        while found and len(remaining) >= size:
            found = False
            for i in remaining:
                group = sorted(remaining, key=lambda j: dist[i, j])[:size]
                if dist[np.ix_(group, group)].max() <= radius:
                    clusters.append(sorted(group))
                    remaining = [j for j in remaining if j not in group]
                    found = True
                    break
    clusters.extend([i] for i in remaining)
    return [np.array(c) for c in sorted(clusters)]


def _polish_center(
    coeffs : np.ndarray, members : np.ndarray, tol : Tolerances
) -> complex:
    # The (m-1)-th derivative of a polynomial has a simple root at the
    # mean of a cluster of m roots.
    center = complex(members.mean())
    order = len(members) - 1
    derivative = np.polyder(coeffs, order)
    slope = np.polyder(derivative)
    z = center
    for _ in range(tol.max_iter):
        denominator = np.polyval(slope, z)
        if denominator == 0:
            break
        step = np.polyval(derivative, z) / denominator
        z -= step
        if not np.isfinite(z) or abs(step) <= tol.eps_root * (1.0 + abs(z)):
            break
    radius = tol.cluster_radius(len(members), magnitude(members))
    if not np.isfinite(z) or abs(z - center) > radius:
        return center
    return complex(z)


def _snap(
    values : np.ndarray, coeffs : np.ndarray, clusters : List[np.ndarray],
    tol : Tolerances
) -> np.ndarray:
    values = values.copy()
    for idx in clusters:
        if len(idx) > 1:
            values[idx] = _polish_center(coeffs, values[idx], tol)
    return values


def snap_clusters(
    values : ArrayLike, coeffs : ArrayLike, tol : Optional[Tolerances] = None
) -> np.ndarray:
    """Replace every cluster of roots of ``coeffs`` by its polished centre.

    Parameters
    ----------
    values : ArrayLike
        Approximate roots.
    coeffs : ArrayLike
        Coefficients of the polynomial, highest degree first.
    tol : Optional[Tolerances]
        Clustering thresholds.

    Returns
    -------
    np.ndarray
        The roots, every member of a cluster set to the cluster mean
        refined by Newton steps on a derivative of the polynomial.
    """
    tol = resolve_tolerances(tol)
    values = _values_of(values)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    return _snap(values, coeffs, cluster_values(values, tol), tol)


def _check_residuals(
    coeffs : np.ndarray, values : np.ndarray, clusters : List[np.ndarray],
    tol : Tolerances
) -> None:
    """Raise unless every cluster centre is within its cluster radius of a
    root of the same multiplicity.

    Near an ``m``-fold root ``c`` the polynomial behaves like
    ``p^(m)(c) / m! * (z - c)^m``. The centre lies within ``cluster_radius``
    of the cluster mean, so the residual may reach that term at
    twice the radius on top of the rounding bound.
    """
    scale = magnitude(values)
    abs_coeffs = np.abs(coeffs)
    for idx in clusters:
        center = values[idx[0]]
        multiplicity = len(idx)
        rounding = 64 * UNIT_ROUNDOFF * np.polyval(abs_coeffs, abs(center))
        leading = np.polyval(np.polyder(coeffs, multiplicity), center)
        leading /= factorial(multiplicity)
        radius = tol.cluster_radius(multiplicity, scale)
        allowed = rounding + abs(leading) * (2 * radius) ** multiplicity
        if abs(np.polyval(coeffs, center)) > allowed:
            raise NonConvergence(
                f"Polynomial residual above bound at root {center} of "
                f"multiplicity {multiplicity}."
            )


def roots(
    poly : CPoly, tol : Optional[Tolerances] = None, seed : int = 0
) -> SpectrumMultiset:
    """All roots of a polynomial, with multiplicity.

    Parameters
    ----------
    poly : CPoly
        Polynomial of degree at least one.
    tol : Optional[Tolerances]
        Convergence and clustering thresholds.
    seed : int, optional
        Seed of the jitter on the initial guesses, by default 0.

    Returns
    -------
    SpectrumMultiset
        The roots, clusters snapped to their centroid.

    Raises
    ------
    ValueError
        If the degree is below one.
    NonConvergence
        If the iteration does not converge or a cluster centre is not
        close to a root of its multiplicity.

    Examples
    --------
    >>> roots(CPoly([1, 0, -1])).values
    array([-1.+0.j,  1.+0.j])

    """
    tol = resolve_tolerances(tol)
    if poly.degree < 1:
        raise ValueError("Cannot find roots of a constant polynomial.")
    monic = poly.monic().coeffs
    nonzero = np.flatnonzero(monic)
    zero_roots = len(monic) - 1 - nonzero[-1]
    coeffs = monic[:nonzero[-1] + 1]
    degree = len(coeffs) - 1
    if degree == 0:
        found = np.zeros(0, dtype=np.complex128)
    elif degree == 1:
        found = np.array([-coeffs[1]])
    else:
        found = _aberth(coeffs, tol, make_rng(seed))
    values = np.concatenate([found, np.zeros(zero_roots, dtype=np.complex128)])
    clusters = cluster_values(values, tol)
    values = _snap(values, monic, clusters, tol)
    _check_residuals(monic, values, clusters, tol)
    return SpectrumMultiset(values)


def spectrum(
    matrix : ArrayLike, tol : Optional[Tolerances] = None, seed : int = 0
) -> SpectrumMultiset:
    """Eigenvalues of a matrix with algebraic multiplicity.

    The characteristic polynomial of :math:`M/s` is solved and the roots are
    scaled back by :math:`s`, a power of two close to :math:`\\|M\\|_1`.

    Parameters
    ----------
    matrix : ArrayLike
        Square complex matrix.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed, by default 0.

    Returns
    -------
    SpectrumMultiset
        The eigenvalue multiset.
    """
    matrix = as_cmatrix(matrix)
    if matrix.shape[0] == 1:
        return SpectrumMultiset(matrix[0, :1])
    scale = _power_of_two_scale(matrix)
    poly = CPoly(_faddeev_leverrier(matrix / scale))
    return SpectrumMultiset(roots(poly, tol, seed).values * scale)


def nth_roots(z : complex, order : int) -> List[complex]:
    """The ``order`` complex numbers whose ``order``-th power is ``z``.

    Parameters
    ----------
    z : complex
        Radicand.
    order : int
        Positive integer.

    Returns
    -------
    List[complex]
        The roots, starting from the principal one.

    Examples
    --------
    >>> nth_roots(-1, 2)
    [1j, -1j]

    """
    check_positive(order)
    z = complex(z)
    if z == 0:
        return [0j] * order
    modulus = abs(z) ** (1.0 / order)
    phase = np.angle(z) / order
    return [
        complex(modulus * np.exp(1j * (phase + 2 * np.pi * k / order)))
        for k in range(order)
    ]


def kernel(
    matrix : ArrayLike, tol : Optional[Tolerances] = None,
    scale : Optional[float] = None
) -> Subspace:
    """Orthonormal basis of the numerical null space.

    The rank is the number of pivots of the column pivoted QR factorization
    of :math:`M^H` above ``eps_rank`` times the largest column norm (or
    ``scale`` when it is larger). The trailing columns of the orthogonal
    factor span the null space of :math:`M`.

    Parameters
    ----------
    matrix : ArrayLike
        Matrix of shape ``(m, n)``.
    tol : Optional[Tolerances]
        Rank threshold.
    scale : Optional[float]
        Absolute reference for the rank threshold.

    Returns
    -------
    Subspace
        Null space in :math:`\\mathbb{C}^n`.
    """
    tol = resolve_tolerances(tol)
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.complex128))
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return Subspace(np.eye(n, dtype=np.complex128))
    q, r, _ = scipy.linalg.qr(matrix.conj().T, pivoting=True, mode='full')
    rank = _numerical_rank(np.abs(np.diag(r)), tol, scale)
    return Subspace(q[:, rank:])


def is_diagonalizable(
    matrix : ArrayLike, tol : Optional[Tolerances] = None, seed : int = 0
) -> bool:
    """Whether geometric and algebraic multiplicities agree everywhere.

    Parameters
    ----------
    matrix : ArrayLike
        Square complex matrix.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    bool
        True if every eigenspace has full dimension.
    """
    matrix = as_cmatrix(matrix)
    n = matrix.shape[0]
    norm = float(np.linalg.norm(matrix, 2))
    identity = np.eye(n)
    for value, multiplicity in spectrum(matrix, tol, seed).distinct(tol):
        if multiplicity == 1:
            continue
        eigenspace = kernel(matrix - value * identity, tol, scale=norm)
        if eigenspace.dim != multiplicity:
            logging.debug(
                "Eigenvalue %s has algebraic multiplicity %d and geometric "
                "multiplicity %d", value, multiplicity, eigenspace.dim
            )
            return False
    return True


def _largest_invariant_subspace(
    basis : np.ndarray, matrix : np.ndarray, tol : Tolerances, norm : float
) -> np.ndarray:
    # Shrink span(basis) to {v : Mv in span} until it is M-invariant.
    while basis.shape[1]:
        image = matrix @ basis
        outside = image - basis @ (basis.conj().T @ image)
        keep = kernel(outside, tol, scale=norm)
        if keep.dim == basis.shape[1]:
            break
        basis = orthonormal_basis(basis @ keep.basis, tol, scale=1.0).basis
    return basis


def common_eigenvector(
    first : ArrayLike, second : ArrayLike,
    tol : Optional[Tolerances] = None, seed : int = 0
) -> Optional[np.ndarray]:
    """Find a unit vector that is an eigenvector of both matrices.

    Each eigenspace of ``first`` is shrunk to its largest
    ``second``-invariant subspace; any eigenvector of ``second`` inside it
    is common to both.

    Parameters
    ----------
    first, second : ArrayLike
        Square matrices of the same dimension.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    Optional[np.ndarray]
        A unit vector, or None when the matrices share no eigenvector.
    """
    tol = resolve_tolerances(tol)
    first = as_cmatrix(first, 'A')
    second = as_cmatrix(second, 'B')
    n = check_same_dimension(first, second)
    norm_first = float(np.linalg.norm(first, 2))
    norm_second = max(float(np.linalg.norm(second, 2)), 1.0)
    for value, _ in spectrum(first, tol, seed).distinct(tol):
        eigenspace = kernel(first - value * np.eye(n), tol, scale=norm_first)
        basis = _largest_invariant_subspace(
            eigenspace.basis, second, tol, norm_second
        )
        if not basis.shape[1]:
            continue
        restricted = basis.conj().T @ second @ basis
        mu = spectrum(restricted, tol, seed).values[0]
        direction = kernel(
            restricted - mu * np.eye(basis.shape[1]), tol, scale=norm_second
        )
        vector = basis @ direction.basis[:, 0]
        return vector / np.linalg.norm(vector)
    return None


def multiset_match(
    first : Union[SpectrumMultiset, ArrayLike],
    second : Union[SpectrumMultiset, ArrayLike],
    tol : Optional[Tolerances] = None
) -> Optional[np.ndarray]:
    """Match two multisets of complex numbers.

    Parameters
    ----------
    first, second : Union[SpectrumMultiset, ArrayLike]
        Multisets of the same size.
    tol : Optional[Tolerances]
        ``eps_cluster`` is the matching threshold, relative to
        ``1 + max|value|``.

    Returns
    -------
    Optional[np.ndarray]
        ``sigma`` with ``|first[k] - second[sigma[k]]|`` below threshold for
        every ``k`` (minimum total cost assignment), or None.

    Raises
    ------
    ValueError
        If sizes differ.

    Examples
    --------
    >>> multiset_match([1, 2], [2, 1])
    array([1, 0])

    """
    tol = resolve_tolerances(tol)
    left, right = _values_of(first), _values_of(second)
    if len(left) != len(right):
        raise ValueError("Multisets must have the same size.")
    cost = np.abs(left[:, None] - right[None, :])
    rows, cols = linear_sum_assignment(cost)
    threshold = tol.eps_cluster * magnitude(left, right)
    if np.any(cost[rows, cols] > threshold):
        return None
    sigma = np.empty(len(left), dtype=int)
    sigma[rows] = cols
    return sigma


def discriminant(values : Union[SpectrumMultiset, ArrayLike]) -> complex:
    """Product of squared pairwise differences of a multiset."""
    values = _values_of(values)
    i, j = np.triu_indices(len(values), k=1)
    return complex(np.prod((values[i] - values[j]) ** 2))
