"""Synthesize triangulated surfaces whose Reeb graph realizes a labeled graph."""

__version__ = "0.1.0"
