"""Recover the class interaction graph of Java code and analyze its coupling."""

__version__ = "0.1.0"
