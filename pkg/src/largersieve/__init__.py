"""Larger sieve, explicit Hilbert-irreducibility bounds and desk-scale censuses."""

__version__ = "0.1.0"
