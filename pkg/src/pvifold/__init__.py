"""Exact Painleve VI symmetry transformations over square-root towers."""

__version__ = "0.1.0"
