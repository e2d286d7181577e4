"""Dimension witnesses from the parity-oblivious random access code Bell family."""

__version__ = "0.1.0"
