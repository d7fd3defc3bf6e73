"""Exact models and verification for parabolic contact structures."""

__version__ = "0.1.0"
