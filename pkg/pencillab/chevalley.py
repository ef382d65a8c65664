#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains characteristic subspaces, eigenprojections and the
Jordan-Chevalley decomposition :math:`M = D + N`.

The eigenprojection onto :math:`\\operatorname{Ker}(M - \\lambda I_n)^n`
along :math:`\\operatorname{im}(M - \\lambda I_n)^n` is a polynomial in
:math:`M`. With distinct eigenvalues :math:`\\mu` of multiplicities
:math:`m_\\mu`, let :math:`q_\\lambda(x) = \\prod_{\\mu \\neq \\lambda}
(x - \\mu)^{m_\\mu}` and :math:`h_\\lambda` the Taylor expansion of
:math:`1/q_\\lambda` at :math:`\\lambda` truncated to degree
:math:`m_\\lambda - 1`. Then

.. math::

    P_\\lambda = h_\\lambda(M)\\,q_\\lambda(M)

since :math:`h_\\lambda q_\\lambda \\equiv 1 \\bmod (x - \\lambda)^{m_\\lambda}`
and :math:`\\equiv 0 \\bmod (x - \\mu)^{m_\\mu}` for :math:`\\mu \\neq
\\lambda`. The Taylor coefficients come from the binomial series

.. math::

    (x - \\mu)^{-m} = \\sum_{k \\ge 0} (-1)^k \\binom{m + k - 1}{k}
    \\frac{(x - \\lambda)^k}{(\\lambda - \\mu)^{m + k}}.

The diagonalizable part is :math:`D = \\sum_\\lambda \\lambda P_\\lambda` and
the nilpotent part is :math:`N = M - D`.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.special import comb

from pencillab.errors import IllConditioned, NotAnEigenvalue
from pencillab.numcore import (
    SpectrumMultiset, Subspace, Tolerances, as_cmatrix, kernel, magnitude,
    resolve_tolerances, spectrum
)


@dataclass(frozen=True, eq=False)
class EigenprojectionSet:
    """Eigenprojections of a matrix, one per distinct eigenvalue.

    Parameters
    ----------
    pairs : List[Tuple[complex, np.ndarray]]
        ``(lambda, P_lambda)`` in canonical eigenvalue order.
    multiplicities : List[int]
        Algebraic multiplicity of each eigenvalue.
    """
    pairs : List[Tuple[complex, np.ndarray]]
    multiplicities : List[int]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def values(self) -> List[complex]:
        """The distinct eigenvalues."""
        return [value for value, _ in self.pairs]

    @property
    def projections(self) -> List[np.ndarray]:
        """The projection matrices."""
        return [projection for _, projection in self.pairs]

    def residuals(self, matrix : np.ndarray) -> Dict[str, float]:
        """Deviations from the defining identities of eigenprojections.

        Parameters
        ----------
        matrix : np.ndarray
            The matrix the projections belong to.

        Returns
        -------
        Dict[str, float]
            ``completeness`` (sum equals identity), ``idempotence``,
            ``orthogonality`` (mutual products vanish) and ``commutation``
            (relative to the norm of ``matrix``).
        """
        n = matrix.shape[0]
        projections = self.projections
        scale = max(1.0, np.linalg.norm(matrix, 2))
        orthogonality = 0.0
        for i, first in enumerate(projections):
            for second in projections[i + 1:]:
                orthogonality = max(
                    orthogonality,
                    np.linalg.norm(first @ second, 2),
                    np.linalg.norm(second @ first, 2)
                )
        return {
            'completeness': float(
                np.linalg.norm(sum(projections) - np.eye(n), 2)
            ),
            'idempotence': float(max(
                np.linalg.norm(p @ p - p, 2) for p in projections
            )),
            'orthogonality': float(orthogonality),
            'commutation': float(max(
                np.linalg.norm(p @ matrix - matrix @ p, 2) for p in projections
            ) / scale),
        }


@dataclass(frozen=True, eq=False)
class JCDecomposition:
    """Jordan-Chevalley decomposition ``M = D + N``.

    Parameters
    ----------
    D : np.ndarray
        Diagonalizable part.
    N : np.ndarray
        Nilpotent part.
    eigenvalues : SpectrumMultiset
        Eigenvalues of ``M`` (and of ``D``).
    """
    D : np.ndarray
    N : np.ndarray
    eigenvalues : SpectrumMultiset

    def residuals(self, matrix : np.ndarray) -> Dict[str, float]:
        """Deviations of the decomposition of ``matrix``.

        Returns
        -------
        Dict[str, float]
            ``sum`` for ``D + N - M``, ``nilpotency`` for ``N^n`` and
            ``commutation`` for ``DN - ND``, all relative to
            ``max(1, ||M||)`` (powers of it for ``nilpotency``).
        """
        n = matrix.shape[0]
        scale = max(1.0, np.linalg.norm(matrix, 2))
        return {
            'sum': float(np.linalg.norm(self.D + self.N - matrix, 2) / scale),
            'nilpotency': float(np.linalg.norm(
                np.linalg.matrix_power(self.N, n), 2
            ) / scale ** n),
            'commutation': float(np.linalg.norm(
                self.D @ self.N - self.N @ self.D, 2
            ) / scale ** 2),
        }


def _inverse_taylor(
    value : complex, others : List[Tuple[complex, int]], order : int
) -> np.ndarray:
    """Taylor coefficients at ``value`` of ``prod (x - mu)^(-m)`` to ``order``."""
    coeffs = np.zeros(order, dtype=np.complex128)
    coeffs[0] = 1.0
    for mu, multiplicity in others:
        gap = value - mu
        factor = np.array([
            (-1) ** k * comb(multiplicity + k - 1, k, exact=True)
            / gap ** (multiplicity + k)
            for k in range(order)
        ], dtype=np.complex128)
        coeffs = np.convolve(coeffs, factor)[:order]
    return coeffs


def _check_separation(
    clusters : List[Tuple[complex, int]], tol : Tolerances, scale : float
) -> None:
    for i, (first, _) in enumerate(clusters):
        for second, _ in clusters[i + 1:]:
            if abs(first - second) <= 10 * tol.eps_cluster * scale:
                raise IllConditioned(
                    f"Eigenvalues {first} and {second} are too close to "
                    "separate reliably."
                )


def _projections(
    matrix : np.ndarray, clusters : List[Tuple[complex, int]]
) -> List[np.ndarray]:
    n = matrix.shape[0]
    identity = np.eye(n, dtype=np.complex128)
    result = []
    for value, multiplicity in clusters:
        others = [(mu, m) for mu, m in clusters if mu != value]
        complement = identity.copy()
        for mu, m in others:
            complement = complement @ np.linalg.matrix_power(
                matrix - mu * identity, m
            )
        taylor = _inverse_taylor(value, others, multiplicity)
        shifted = matrix - value * identity
        interpolant = np.zeros_like(identity)
        power = identity.copy()
        for coeff in taylor:
            interpolant += coeff * power
            power = power @ shifted
        result.append(interpolant @ complement)
    return result


def eigenprojections(
    matrix : np.ndarray, tol : Optional[Tolerances] = None, seed : int = 0
) -> EigenprojectionSet:
    """Eigenprojections of a matrix by Hermite interpolation.

    Parameters
    ----------
    matrix : np.ndarray
        Square complex matrix.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    EigenprojectionSet
        One projection per distinct eigenvalue.

    Raises
    ------
    IllConditioned
        If two unmerged eigenvalue clusters are closer than
        ``10 * eps_cluster`` relative to the spectrum scale, or if the
        projections miss their defining identities by more than
        ``eps_verify`` (relative to the largest projection norm).
    """
    tol = resolve_tolerances(tol)
    matrix = as_cmatrix(matrix)
    eigenvalues = spectrum(matrix, tol, seed)
    clusters = eigenvalues.distinct(tol)
    _check_separation(clusters, tol, eigenvalues.scale())
    projections = _projections(matrix, clusters)
    result = EigenprojectionSet(
        pairs=[(value, p) for (value, _), p in zip(clusters, projections)],
        multiplicities=[m for _, m in clusters]
    )
    weight = max(1.0, max(np.linalg.norm(p, 2) for p in projections)) ** 2
    for name, value in result.residuals(matrix).items():
        if value > tol.eps_verify * weight:
            raise IllConditioned(
                f"Eigenprojections violate {name} by {value:.3g}."
            )
    return result


def _locate(
    value : complex, eigenvalues : SpectrumMultiset, tol : Tolerances
) -> Tuple[complex, int, List[Tuple[complex, int]]]:
    clusters = eigenvalues.distinct(tol)
    scale = magnitude(eigenvalues.values, [value])
    gaps = [abs(value - mu) for mu, _ in clusters]
    best = int(np.argmin(gaps))
    if gaps[best] > tol.cluster_radius(clusters[best][1], scale):
        raise NotAnEigenvalue(f"{value} is not an eigenvalue.")
    return clusters[best][0], clusters[best][1], clusters


def char_subspace(
    matrix : np.ndarray, value : complex,
    tol : Optional[Tolerances] = None, seed : int = 0
) -> Subspace:
    """Characteristic subspace :math:`\\operatorname{Ker}(M - \\lambda I)^n`.

    The kernel of :math:`(M - \\lambda I)^m` with :math:`m` the algebraic
    multiplicity is computed first. When rounding makes its dimension
    differ from :math:`m`, the range of the eigenprojection is used.

    Parameters
    ----------
    matrix : np.ndarray
        Square complex matrix.
    value : complex
        Eigenvalue, up to the clustering tolerance.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    Subspace
        Subspace of dimension equal to the algebraic multiplicity.

    Raises
    ------
    NotAnEigenvalue
        If ``value`` is not an eigenvalue of ``matrix``.
    """
    tol = resolve_tolerances(tol)
    matrix = as_cmatrix(matrix)
    n = matrix.shape[0]
    centroid, multiplicity, clusters = _locate(
        complex(value), spectrum(matrix, tol, seed), tol
    )
    if multiplicity == n:
        return Subspace(np.eye(n, dtype=np.complex128))
    shifted = matrix - centroid * np.eye(n)
    power = np.linalg.matrix_power(shifted, multiplicity)
    norm = max(np.linalg.norm(shifted, 2), 1.0) ** multiplicity
    candidate = kernel(power, tol, scale=norm)
    if candidate.dim == multiplicity:
        return candidate
    logging.debug(
        "Kernel of (M - %s I)^%d has dimension %d, using the eigenprojection",
        centroid, multiplicity, candidate.dim
    )
    index = [mu for mu, _ in clusters].index(centroid)
    projection = _projections(matrix, clusters)[index]
    q, _, _ = scipy.linalg.qr(projection, pivoting=True, mode='economic')
    return Subspace(q[:, :multiplicity])


def jordan_chevalley(
    matrix : np.ndarray, tol : Optional[Tolerances] = None, seed : int = 0
) -> JCDecomposition:
    """Jordan-Chevalley decomposition of a matrix.

    Parameters
    ----------
    matrix : np.ndarray
        Square complex matrix.
    tol : Optional[Tolerances]
        Thresholds.
    seed : int, optional
        Root finder seed.

    Returns
    -------
    JCDecomposition
        ``D = sum lambda P_lambda`` and ``N = M - D``.
    """
    matrix = as_cmatrix(matrix)
    projections = eigenprojections(matrix, tol, seed)
    diagonal = sum(value * p for value, p in projections.pairs)
    eigenvalues = SpectrumMultiset(np.concatenate([
        np.full(m, value) for value, m in zip(
            projections.values, projections.multiplicities
        )
    ]))
    return JCDecomposition(
        D=diagonal, N=matrix - diagonal, eigenvalues=eigenvalues
    )
