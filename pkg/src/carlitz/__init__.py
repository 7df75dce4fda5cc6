"""Exact enumeration of column-convex and convex Carlitz polyominoes."""
__version__ = "0.1.0"
