"""Exact enumeration and lace-expansion toolkit for attracting SAWs."""

__version__ = "0.1.0"
