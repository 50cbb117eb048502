"""Computational toolkit for finite-cyclicity analysis of graphics through nilpotent points."""

__version__ = "0.1.0"
