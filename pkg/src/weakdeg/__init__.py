"""Weak degeneracy of planar graphs without 5-, 6- and 7-cycles: exact
solvers, structural checks, discharging audit and a constructive reducer."""

__version__ = "0.1.0"
