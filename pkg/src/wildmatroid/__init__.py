"""Matroids with an infinite circuit-cocircuit intersection: constructions and verifiers."""

__version__ = "0.1.0"

