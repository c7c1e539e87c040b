"""Matroids, Tutte polynomials and Orlik-Solomon algebras with exact arithmetic."""

__version__ = "0.1.0"
