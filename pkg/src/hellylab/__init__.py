"""Exact verification tools for discrete Helly phenomena of axis-parallel boxes."""

__version__ = "0.1.0"
