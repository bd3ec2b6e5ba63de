"""Adjugate-like matrices, Schur-like complements and latent-root size reduction."""

__version__ = "0.1.0"
