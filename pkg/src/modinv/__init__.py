"""Modular vector invariants of C_p and SL2(F_p) on copies of the plane."""

__version__ = "0.1.0"
