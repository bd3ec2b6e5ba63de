"""Generic commutative-ring arithmetic: polynomials, dense matrices,
division-free determinants and adjugate-like matrices."""
from .rings import (
    Ring, ZZ, QQ, QQI, CC, GaussianRational, Poly, PolyRing, poly_ring, poly_gcd,
    RatFunc, RatFuncField, ratfunc_field, ring_of, common_ring, to_complex,
)
from .matrix import (
    RingMatrix, det, charpoly, minimal_polynomial, leading_minors, rref, rank, nullspace,
)
from .quadratic import QuadraticField, QuadraticSurd, quadratic_field
from .adjugate import (
    pk_eval, p_eval, p_matrix, adjugate_like, adjugate, annihilates, require_annihilates,
    annihilation_residual, quotient_coefficients, ANNIHILATE_TOL,
)

__all__ = [
    "Ring", "ZZ", "QQ", "QQI", "CC", "GaussianRational", "Poly", "PolyRing", "poly_ring",
    "poly_gcd", "RatFunc", "RatFuncField", "ratfunc_field", "ring_of", "common_ring",
    "to_complex", "RingMatrix", "det", "charpoly", "minimal_polynomial", "leading_minors",
    "rref", "rank", "nullspace", "pk_eval", "p_eval", "p_matrix", "adjugate_like", "adjugate",
    "annihilates", "require_annihilates", "annihilation_residual", "quotient_coefficients",
    "ANNIHILATE_TOL", "QuadraticField", "QuadraticSurd", "quadratic_field",
]
