"""Exact and high-precision checks of cyclotomic L-value identities."""

__version__ = "0.1.0"
