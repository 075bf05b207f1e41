"""Desk-scale laboratory for periodic points of endomorphisms of the projective line."""

__version__ = "0.1.0"
