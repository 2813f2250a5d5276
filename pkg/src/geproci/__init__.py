"""Exact finite-geometry toolkit: spreads in PG(3,q), geproci
certification, unexpected cones, and characteristic-2 fat-point schemes."""

__version__ = "0.1.0"
