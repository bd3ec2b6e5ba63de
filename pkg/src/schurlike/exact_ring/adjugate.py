"""The two-variable polynomials p_k(y, z), p(y, z; a) and adjugate-like matrices."""
from __future__ import annotations

from ..errors import InvalidAnnihilatorError, NotAnnihilatingError, ShapeError, RingMismatchError
from .matrix import RingMatrix, charpoly
from .rings import Poly, Ring, common_ring

#: Frobenius-norm tolerance factor for annihilation checks on the inexact ring.
ANNIHILATE_TOL = 1e-8


def pk_eval(k: int, y, z):
    """``sum_{i=1..k} y^(i-1) z^(k-i)``, so that ``(y - z) p_k = y^k - z^k``."""
    if k < 1:
        raise ValueError("p_k is defined for k >= 1")
    ring = common_ring(y, z)
    acc = ring.zero()
    for i in range(1, k + 1):
        acc = acc + y ** (i - 1) * z ** (k - i)
    return acc


def _coefficients(a: Poly, ring: Ring) -> list:
    if a.is_zero():
        raise InvalidAnnihilatorError("the zero polynomial annihilates nothing useful")
    try:
        return [ring.convert(c) for c in a.coeffs]
    except RingMismatchError as exc:
        raise RingMismatchError(f"coefficients of {a} are not in {ring!r}") from exc


def quotient_coefficients(a: Poly, f, ring: Ring) -> list:
    """Coefficients ``b_0..b_{d-1}`` of ``(a(x) - a(f)) / (x - f)`` by synthetic division.

    ``p(f, z; a) = sum_i b_i z^i``.
    """
    c = _coefficients(a, ring)
    d = len(c) - 1
    if d == 0:
        return []
    b = [ring.zero()] * d
    b[d - 1] = c[d]
    for i in range(d - 1, 0, -1):
        b[i - 1] = c[i] + f * b[i]
    return b


def p_eval(a: Poly, y, z):
    """``p(y, z; a) = sum_k a_k p_k(y, z)`` for commuting scalars ``y``, ``z``."""
    ring = common_ring(y, z)
    b = quotient_coefficients(a, y, ring)
    acc = ring.zero()
    for coef in reversed(b):
        acc = acc * z + coef
    return acc


def p_matrix(f, X: RingMatrix, a: Poly) -> RingMatrix:
    """``p(f I, X; a)`` without any annihilation check."""
    if not X.is_square():
        raise ShapeError("adjugate-like matrix of a non-square matrix")
    ring = X.ring
    f = ring.convert(f)
    b = quotient_coefficients(a, f, ring)
    n = X.rows
    eye = RingMatrix.identity(ring, n)
    if not b:
        return RingMatrix.zeros(ring, n)
    acc = eye.scale(b[-1])
    for coef in reversed(b[:-1]):
        acc = acc @ X + eye.scale(coef)
    return acc


def annihilation_residual(X: RingMatrix, a: Poly) -> float:
    """``||a(X)||_F / max(1, ||X||_F^d)`` (meaningful on the inexact ring)."""
    r = X.apply_poly(a)
    scale = max(1.0, X.frobenius_norm() ** max(a.degree(), 0))
    return r.frobenius_norm() / scale


def annihilates(X: RingMatrix, a: Poly, tol: float = ANNIHILATE_TOL) -> bool:
    """Exact zero test on exact rings, scaled Frobenius test otherwise."""
    if a.is_zero():
        raise InvalidAnnihilatorError("zero polynomial")
    if X.ring.exact:
        return X.apply_poly(a).is_zero()
    return annihilation_residual(X, a) <= tol


def require_annihilates(X: RingMatrix, a: Poly, tol: float = ANNIHILATE_TOL, what: str = "X"):
    if not annihilates(X, a, tol):
        raise NotAnnihilatingError(f"{a} does not annihilate {what}")


def adjugate_like(X: RingMatrix, a: Poly, f, check: bool = True, tol: float = ANNIHILATE_TOL) -> RingMatrix:
    """Adjugate-like matrix ``p(f I, X; a)`` of ``X`` for an annihilating ``a``.

    Satisfies ``(f I - X) P = P (f I - X) = a(f) I``.
    """
    if check:
        require_annihilates(X, a, tol)
    return p_matrix(f, X, a)


def adjugate(X: RingMatrix) -> RingMatrix:
    """Classical adjugate ``(-1)^(n-1) p(0, X; charpoly)``, division free."""
    n = X.rows
    P = p_matrix(X.ring.zero(), X, charpoly(X))
    return P if n % 2 == 1 else -P
