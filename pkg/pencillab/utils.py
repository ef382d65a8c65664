#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains utility functions shared by the analysis modules.

Randomness never comes from global state: every routine that samples takes a
seed and builds its own generator with :func:`make_rng`, so that two runs with
the same seed give the same sample points regardless of call order.

**Sampling in a disk**

Random pencil parameters are drawn uniformly in the closed disk of radius
:math:`R` centred at :math:`c`:

.. math::

    z = c + R\\sqrt{u}\\,e^{2i\\pi v}, \\quad u, v \\sim \\mathcal{U}(0, 1)

The square root makes the density uniform in area rather than in radius.
"""
from typing import Union, Tuple, List, Iterable
from itertools import product

import numpy as np


def check_positive(*values : Union[int, float]) -> None:
    """Ensure all values are greater than 0.

    Parameters
    ----------
    values : Union[int, float]
        Values to be checked.

    Raises
    ------
    ValueError
        If any value is less than or equal to 0.
    """
    for value in values:
        if value <= 0:
            raise ValueError("All arguments must be greater than 0.")


def cartesian_product(
    *args : Iterable[Union[int, str]]
) -> List[Tuple[Union[int, str]]]:
    """Generate cartesian product of input iterables.

    Parameters
    ----------
    args : Iterable[Union[int, str]]
        Iterables to be combined.

    Returns
    -------
    List[Tuple[Union[int, str]]]
        List of tuples representing the Cartesian product.

    Examples
    --------
    Combine two windows [-1, 0] and [1]:

    >>> cartesian_product([-1, 0], [1])
    [(-1, 1), (0, 1)]

    """
    return list(product(*args))


def integer_window(bounds : Union[int, Tuple[int, int]]) -> List[int]:
    """Expand an inclusive integer window.

    Parameters
    ----------
    bounds : Union[int, Tuple[int, int]]
        Either a single integer or a pair ``(low, high)``.

    Returns
    -------
    List[int]
        The integers ``low, low + 1, ..., high``.

    Raises
    ------
    ValueError
        If ``high < low``.

    Examples
    --------
    >>> integer_window((-2, 1))
    [-2, -1, 0, 1]
    >>> integer_window(3)
    [3]

    """
    if isinstance(bounds, (int, np.integer)):
        return [int(bounds)]
    low, high = (int(b) for b in bounds)
    if high < low:
        raise ValueError(f"Empty integer window ({low}, {high}).")
    return list(range(low, high + 1))


def make_rng(seed : Union[int, None]) -> np.random.Generator:
    """Build the random generator used for one seeded computation.

    Parameters
    ----------
    seed : Union[int, None]
        Seed of the generator.

    Returns
    -------
    np.random.Generator
        A fresh PCG64 generator.
    """
    return np.random.default_rng(seed)


def random_disk_points(
    rng : np.random.Generator,
    count : int,
    radius : float,
    center : complex = 0j
) -> np.ndarray:
    """Draw points uniformly in a closed disk of the complex plane.

    Parameters
    ----------
    rng : np.random.Generator
        Random generator.
    count : int
        Number of points.
    radius : float
        Radius of the disk.
    center : complex, optional
        Centre of the disk, by default 0.

    Returns
    -------
    np.ndarray
        Complex array of length ``count``.
    """
    check_positive(count, radius)
    modulus = radius * np.sqrt(rng.random(count))
    phase = np.exp(2j * np.pi * rng.random(count))
    return center + modulus * phase
