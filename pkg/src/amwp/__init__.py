"""Exact curvature of AMWP metrics built from cubic intersection forms."""

__version__ = "0.1.0"
