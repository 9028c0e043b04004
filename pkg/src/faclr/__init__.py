"""Factorial Schur functions and their Littlewood-Richardson coefficients."""

__version__ = "0.1.0"
