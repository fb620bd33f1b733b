"""Horizontal class transposition groups as finite permutation groups."""

__version__ = "0.1.0"
