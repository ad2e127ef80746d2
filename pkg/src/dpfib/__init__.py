"""Exact-arithmetic workbench for del Pezzo fibrations of degree 1 and 2."""

from .exactpoly import BigradedPoly, parse_poly, to_text

__all__ = ["BigradedPoly", "parse_poly", "to_text"]

__version__ = "0.1.0"
