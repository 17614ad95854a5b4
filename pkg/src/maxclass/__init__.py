"""Exact computations with graded Lie algebras of maximal class."""

__version__ = "0.1.0"
