"""Numerical q-calculus engine and quantum integral inequality auditor."""

__version__ = "0.1.0"
