"""Sublinear gap edit distance testers with probe-counted string access."""

__version__ = "0.1.0"
