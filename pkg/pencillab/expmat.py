#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the matrix exponential, an independent Taylor series
oracle for it, the logarithm of unipotent matrices and the characterization
of the solutions of :math:`e^M = I_n`.

The exponential uses scaling and squaring with the diagonal Padé approximant
of order 13:

.. math::

    e^M = \\left(r_{13}(2^{-s}M)\\right)^{2^s}, \\quad
    r_{13}(X) = (V - U)^{-1}(V + U)

where :math:`U` and :math:`V` collect the odd and even terms of the
numerator and :math:`s` is the smallest integer with
:math:`\\|M\\|_1 / 2^s \\le 0.5`.

The logarithm of a unipotent matrix :math:`U = e^N` is the finite series

.. math::

    N = \\sum_{k=1}^{n-1} \\frac{(-1)^{k+1}}{k}(U - I_n)^k.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from pencillab.errors import NonConvergence, NotUnipotent, Overflow
from pencillab.numcore import (
    TWO_PI_I, Tolerances, as_cmatrix, is_diagonalizable, resolve_tolerances,
    spectrum
)

PADE_ORDER = 13
SCALING_THRESHOLD = 0.5
DEFAULT_NORM_BOUND = 1e3
ORACLE_NORM_LIMIT = 50.0

# Numerator coefficients of the [13/13] Padé approximant of exp.
PADE13 = (
    64764752532480000,
    32382376266240000,
    7771770303897600,
    1187353796428800,
    129060195264000,
    10559470521600,
    670442572800,
    33522128640,
    1323241920,
    40840800,
    960960,
    16380,
    182,
    1,
)


@dataclass(frozen=True, eq=False)
class ExpResult:
    """Matrix exponential with the parameters used to compute it.

    Parameters
    ----------
    value : np.ndarray
        The exponential.
    scaling_steps : int
        Number of squarings ``s``.
    pade_order : int
        Order of the Padé approximant.
    """
    value : np.ndarray
    scaling_steps : int
    pade_order : int = PADE_ORDER


def _pade13(matrix : np.ndarray):
    b = PADE13
    identity = np.eye(matrix.shape[0], dtype=np.complex128)
    m2 = matrix @ matrix
    m4 = m2 @ m2
    m6 = m2 @ m4
    u = matrix @ (
        m6 @ (b[13] * m6 + b[11] * m4 + b[9] * m2)
        + b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * identity
    )
    v = (
        m6 @ (b[12] * m6 + b[10] * m4 + b[8] * m2)
        + b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * identity
    )
    return u, v


def expm(
    matrix : np.ndarray, norm_bound : float = DEFAULT_NORM_BOUND
) -> ExpResult:
    """Matrix exponential by scaling and squaring.

    Parameters
    ----------
    matrix : np.ndarray
        Square complex matrix.
    norm_bound : float, optional
        Largest accepted 1-norm, by default 1e3.

    Returns
    -------
    ExpResult
        The exponential and its scaling parameters.

    Raises
    ------
    Overflow
        If the 1-norm of ``matrix`` exceeds ``norm_bound``.
    """
    matrix = as_cmatrix(matrix)
    norm = np.linalg.norm(matrix, 1)
    if norm > norm_bound:
        raise Overflow(
            f"Matrix norm {norm:.3g} exceeds the exponential bound "
            f"{norm_bound:.3g}."
        )
    steps = 0
    if norm > SCALING_THRESHOLD:
        steps = int(np.ceil(np.log2(norm / SCALING_THRESHOLD)))
    u, v = _pade13(matrix / 2.0 ** steps)
    value = scipy.linalg.solve(v - u, v + u)
    for _ in range(steps):
        value = value @ value
    return ExpResult(value=value, scaling_steps=steps)


def expm_oracle(
    matrix : np.ndarray, tol : Optional[Tolerances] = None
) -> np.ndarray:
    """Matrix exponential by a compensated Taylor series.

    The series runs on :math:`M/2^s` with :math:`\\|M/2^s\\|_1 \\le 1` and
    stops once a term is below machine precision relative to the partial
    sum; the result is squared back :math:`s` times. This shares no code
    with :func:`expm`.

    Parameters
    ----------
    matrix : np.ndarray
        Square complex matrix with 1-norm at most 50.
    tol : Optional[Tolerances]
        ``max_iter`` bounds the number of terms.

    Returns
    -------
    np.ndarray
        The exponential.

    Raises
    ------
    ValueError
        If the norm exceeds 50.
    NonConvergence
        If ``max_iter`` terms do not suffice.
    """
    tol = resolve_tolerances(tol)
    matrix = as_cmatrix(matrix)
    norm = np.linalg.norm(matrix, 1)
    if norm > ORACLE_NORM_LIMIT:
        raise ValueError(
            f"Oracle only accepts norms up to {ORACLE_NORM_LIMIT}, got {norm}."
        )
    steps = int(np.ceil(np.log2(norm))) if norm > 1.0 else 0
    scaled = matrix / 2.0 ** steps
    total = np.eye(matrix.shape[0], dtype=np.complex128)
    carry = np.zeros_like(total)
    term = total.copy()
    for k in range(1, tol.max_iter + 1):
        term = term @ scaled / k
        # Kahan summation.
        corrected = term - carry
        updated = total + corrected
        carry = (updated - total) - corrected
        total = updated
        if np.linalg.norm(term, 1) <= np.finfo(float).eps * np.linalg.norm(
            total, 1
        ):
            break
    else:
        raise NonConvergence(
            f"Taylor series did not converge in {tol.max_iter} terms."
        )
    for _ in range(steps):
        total = total @ total
    return total


def unipotent_log(
    matrix : np.ndarray, tol : Optional[Tolerances] = None
) -> np.ndarray:
    """Logarithm of a unipotent matrix by its finite series.

    Parameters
    ----------
    matrix : np.ndarray
        Matrix ``U`` with ``U - I`` nilpotent.
    tol : Optional[Tolerances]
        ``eps_verify`` decides nilpotency.

    Returns
    -------
    np.ndarray
        The nilpotent ``N`` with ``e^N = U``.

    Raises
    ------
    NotUnipotent
        If ``(U - I)^n`` is not negligible.
    """
    tol = resolve_tolerances(tol)
    matrix = as_cmatrix(matrix, 'U')
    n = matrix.shape[0]
    shifted = matrix - np.eye(n)
    size = np.linalg.norm(shifted, 2)
    top = np.linalg.matrix_power(shifted, n)
    if np.linalg.norm(top, 2) > tol.eps_verify * max(1.0, size ** n):
        raise NotUnipotent(
            f"(U - I)^{n} has norm {np.linalg.norm(top, 2):.3g}."
        )
    result = np.zeros_like(matrix)
    power = np.eye(n, dtype=np.complex128)
    for k in range(1, n):
        power = power @ shifted
        result += ((-1) ** (k + 1) / k) * power
    return result


def is_unit_exponential(
    matrix : np.ndarray, tol : Optional[Tolerances] = None, seed : int = 0
) -> bool:
    """Whether :math:`e^M = I_n`.

    The solutions are exactly the diagonalizable matrices with spectrum in
    :math:`2i\\pi\\mathbb{Z}`.

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
    bool
        True if ``M`` is a solution of ``e^M = I``.
    """
    tol = resolve_tolerances(tol)
    matrix = as_cmatrix(matrix)
    for value in spectrum(matrix, tol, seed).values:
        nearest = np.round((value / TWO_PI_I).real) * TWO_PI_I
        if abs(value - nearest) > tol.eps_cluster * (1.0 + abs(value)):
            logging.debug("Eigenvalue %s is not in 2i*pi*Z", value)
            return False
    return is_diagonalizable(matrix, tol, seed)


def commutes(
    first : np.ndarray, second : np.ndarray,
    tol : Optional[Tolerances] = None
) -> bool:
    """Whether ``||AB - BA||`` is below ``eps_verify * max(1, ||A|| ||B||)``."""
    tol = resolve_tolerances(tol)
    scale = max(1.0, np.linalg.norm(first, 2) * np.linalg.norm(second, 2))
    bracket = first @ second - second @ first
    return np.linalg.norm(bracket, 2) <= (
        tol.eps_verify * scale
    )


def relative_residual(
    left : np.ndarray, right : np.ndarray, scale : Optional[float] = None
) -> float:
    """Residual ``||left - right||`` relative to ``max(1, scale)``.

    By default the scale is the larger norm of the two sides.
    """
    if scale is None:
        scale = max(np.linalg.norm(left, 2), np.linalg.norm(right, 2))
    return float(np.linalg.norm(left - right, 2) / max(1.0, scale))
