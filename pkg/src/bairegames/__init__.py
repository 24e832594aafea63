"""Symbolic engine for topological games over countably based spaces."""

__version__ = "0.1.0"
