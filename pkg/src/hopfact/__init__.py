"""Exact verification of pointed Hopf algebra actions on noncommutative algebras."""

__version__ = "0.1.0"
