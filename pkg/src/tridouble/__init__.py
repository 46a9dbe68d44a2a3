"""Doubled triorthogonal codes: construction, verification, decoding and simulation."""

__version__ = "0.1.0"
