"""Degree-2 Hermitian modular forms over the Eisenstein field, computed exactly."""

__version__ = "0.1.0"
