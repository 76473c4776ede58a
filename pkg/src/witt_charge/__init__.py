"""Witt-class invariants of modular categories in exact arithmetic."""

__version__ = "0.1.0"
