"""Kazhdan-Lusztig theory for Coxeter groups of types A and D."""

__version__ = "0.1.0"
