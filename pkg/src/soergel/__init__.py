"""Exact computations in Hecke algebras, Schubert calculus and singular
Soergel bimodules attached to a realization of a Coxeter group."""

__version__ = "0.1.0"
