"""Proof search, proof checking and countermodels for Ketonen-style calculi of
classical simple type theory."""

__version__ = "0.1.0"
