"""Exact combinatorics of asymptotically rigid mapping class groups."""

__version__ = "0.1.0"
