#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains the exceptions raised by pencillab.

Numerical failures derive from :class:`NumericalError` so that callers (and
the command-line front end) can tell them apart from invalid input, which is
reported with the built-in ``ValueError`` as in the rest of the package.
"""


class PencilLabError(Exception):
    """Base class of every pencillab specific error.
    """


class NumericalError(PencilLabError):
    """Raised when a numerical procedure cannot deliver a trustworthy result.
    """


class NonConvergence(NumericalError):
    """Raised when an iteration exhausts its iteration budget.

    Usually a sign of ill-conditioning. Root finding may be retried with
    another seed.
    """


class Overflow(NumericalError):
    """Raised when a matrix norm exceeds the configured exponential bound.
    """


class NotUnipotent(NumericalError):
    """Raised when :math:`U - I` is not nilpotent to tolerance.
    """


class NotAnEigenvalue(NumericalError):
    """Raised when a value is not close to any eigenvalue of a matrix.
    """


class IllConditioned(NumericalError):
    """Raised when eigenvalue clusters are too close to be separated reliably.
    """


class TrackingAmbiguous(NumericalError):
    """Raised when eigenvalue continuation cannot decide which branch is which.
    """


class AmbiguousMatching(NumericalError):
    """Raised when two nearly optimal assignments give different verdicts.
    """


class AmbiguousSeparation(NumericalError):
    """Raised when two products of eigenvalues sit in the grey zone between
    identical and separated.
    """


class DegenerateDiscriminant(NumericalError):
    """Raised when the discriminant of a pencil vanishes identically.
    """


class HypothesisViolated(PencilLabError):
    """Raised when a check is called on input that misses its hypotheses.
    """


class MatrixFileError(PencilLabError, ValueError):
    """Raised when a matrix file cannot be parsed.
    """
