"""Finite-scale checks for graduated categories and set functors."""

__version__ = "0.1.0"
