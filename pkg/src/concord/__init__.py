"""Exact computations of knot concordance obstructions."""

__version__ = "0.1.0"
