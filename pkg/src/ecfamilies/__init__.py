"""Elliptic surfaces over Q(t): reduction at places, fiber root numbers and their averages."""

__version__ = "0.1.0"
