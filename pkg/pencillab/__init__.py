""" Description: pencillab package metadata.
"""
__version__ = "0.1.0"
__author__ = "pencillab developers"
__license__ = "MIT"
__description__ = "Commuting exponentials, property L and matrix pencil"    \
    + " analysis for dense complex matrices (pencillab)"
