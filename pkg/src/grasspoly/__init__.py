"""Verification toolkit for real Grassmann polylogarithms."""

__version__ = "0.1.0"
