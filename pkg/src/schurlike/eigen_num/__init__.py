"""Complex spectral pipeline: eigensolver, lambda-matrices, forward/converse reduction."""
from .solver import eigvals, null_vector, available_backends, BACKEND
from .multiset import SpectrumMultiset, eig, DEFAULT_TOL
from .lambda_matrix import LambdaMatrix, Linearization, linearize, latent_roots, companion, poly_roots
from .reduction import (
    KappaBudget, SpectralReduction, Deflation, build_forward_S, build_converse_K,
    spectrum_identity_forward, spectrum_identity_converse, deflate_known_pair,
    householder_to_last, synthetic_division, poly_coeffs, matrix_poly, annihilation_residual,
    split_blocks,
)

__all__ = [
    "eigvals", "null_vector", "available_backends", "BACKEND", "SpectrumMultiset", "eig",
    "DEFAULT_TOL", "LambdaMatrix", "Linearization", "linearize", "latent_roots", "companion",
    "poly_roots", "KappaBudget", "SpectralReduction", "Deflation", "build_forward_S",
    "build_converse_K", "spectrum_identity_forward", "spectrum_identity_converse",
    "deflate_known_pair", "householder_to_last", "synthetic_division", "poly_coeffs",
    "matrix_poly", "annihilation_residual", "split_blocks",
]
