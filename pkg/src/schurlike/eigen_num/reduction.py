"""Forward and converse size reduction of complex eigenproblems, deflation of a
known eigenpair, and the linearized-size bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InvalidAnnihilatorError, MultisetMismatchError, NotAnnihilatingError, \
    PreconditionError, ShapeError
from ..exact_ring import ANNIHILATE_TOL, Poly
from .lambda_matrix import LambdaMatrix, latent_roots, poly_roots
from .multiset import DEFAULT_TOL, SpectrumMultiset, eig


def poly_coeffs(a) -> np.ndarray:
    """Ascending complex coefficients from a :class:`Poly` or a sequence."""
    if isinstance(a, Poly):
        c = np.array(a.complex_coeffs(), dtype=complex)
    else:
        c = np.asarray(a, dtype=complex).ravel()
    c = np.trim_zeros(c, "b")
    if len(c) == 0:
        raise InvalidAnnihilatorError("the zero polynomial is not a valid annihilator")
    return c


def matrix_poly(a, X: np.ndarray) -> np.ndarray:
    c = poly_coeffs(a)
    acc = np.zeros_like(X, dtype=complex)
    eye = np.eye(X.shape[0])
    for coef in reversed(c):
        acc = acc @ X + coef * eye
    return acc


def annihilation_residual(a, X: np.ndarray) -> float:
    """``||a(X)||_F / max(1, ||X||_F^d)``."""
    c = poly_coeffs(a)
    scale = max(1.0, float(np.linalg.norm(X)) ** (len(c) - 1))
    return float(np.linalg.norm(matrix_poly(c, X))) / scale


def _require_annihilates(a, X, tol, what):
    r = annihilation_residual(a, X)
    if r > tol:
        raise NotAnnihilatingError(f"annihilator residual {r:.3g} on {what} exceeds {tol:.3g}")


def split_blocks(M: np.ndarray, n: int):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError("M must be square")
    if not 1 <= n < M.shape[0]:
        raise ShapeError(f"split n={n} invalid for size {M.shape[0]}")
    return M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]


@dataclass(frozen=True)
class KappaBudget:
    """Linearized size ``(d + 1) s`` of the forward-reduced problem."""

    n: int
    s: int
    d: int

    @property
    def kappa(self) -> int:
        return (self.d + 1) * self.s

    @property
    def full_size(self) -> int:
        return self.n + self.s

    @property
    def reduces(self) -> bool:
        return self.kappa < self.full_size

    def deflated(self) -> "KappaBudget":
        """Budget after deflating one simple eigenpair of the leading block."""
        if self.n < 2 or self.d < 1:
            raise PreconditionError("nothing left to deflate")
        new = KappaBudget(self.n - 1, self.s + 1, self.d - 1)
        assert new.kappa == self.kappa + self.d - self.s
        return new

    @property
    def deflation_pays(self) -> bool:
        return self.d < self.s


def build_forward_S(A, B, C, D, a, tol: float = ANNIHILATE_TOL, check: bool = True) -> LambdaMatrix:
    """``S(lam) = a(lam)(lam I - D) - C p(lam I, A; a) B`` as a monic lambda-matrix.

    Only the products ``C A^i B`` are formed, each reusing ``A^(i-1) B``.
    """
    A, B, C, D = (np.atleast_2d(np.asarray(x, dtype=complex)) for x in (A, B, C, D))
    n, s = A.shape[0], D.shape[0]
    if A.shape != (n, n) or B.shape != (n, s) or C.shape != (s, n) or D.shape != (s, s):
        raise ShapeError("blocks are not conformal")
    c = poly_coeffs(a)
    d = len(c) - 1
    if d < 1:
        raise InvalidAnnihilatorError("annihilator must have positive degree")
    if c[-1] != 1:
        raise InvalidAnnihilatorError("annihilator must be monic")
    if check:
        _require_annihilates(c, A, tol, "A")
    CAB = []
    AiB = B
    for _ in range(d):
        CAB.append(C @ AiB)
        AiB = A @ AiB
    eye = np.eye(s, dtype=complex)
    coeffs = []
    for k in range(d + 1):
        head = -c[0] * D if k == 0 else c[k - 1] * eye - c[k] * D
        tail = sum((c[k + 1 + i] * CAB[i] for i in range(d - k)), np.zeros((s, s), complex))
        coeffs.append(head - tail)
    coeffs.append(c[d] * eye)
    return LambdaMatrix(coeffs)


@dataclass
class SpectralReduction:
    """Both sides of a spectrum identity plus the pieces that produced them."""

    lam_matrix: LambdaMatrix
    budget: Optional[KappaBudget]
    latent: SpectrumMultiset
    known: SpectrumMultiset
    removed: SpectrumMultiset
    reconstructed: SpectrumMultiset
    direct: Optional[SpectrumMultiset]
    deviation: float
    passed: bool


def assemble_reduction(lam, budget, latent, known, removed, direct_of, match_tol, check):
    recon = (known + latent).subtract(removed)
    direct = direct_of() if direct_of is not None else None
    dev = recon.distance(direct) if direct is not None else 0.0
    ok = direct is None or recon.matches(direct, match_tol)
    if check and not ok:
        raise MultisetMismatchError(
            f"reconstructed spectrum {recon} differs from direct {direct} (max deviation {dev:.3g})")
    return SpectralReduction(lam, budget, latent, known, removed, recon, direct, dev, ok)


def spectrum_identity_forward(M, n: int, a, sigma_A: SpectrumMultiset | None = None,
                              tol: float = DEFAULT_TOL, tol_annihilate: float = ANNIHILATE_TOL,
                              compare: bool = True, check: bool = True,
                              match_tol: float | None = None) -> SpectralReduction:
    """``sigma(M) = sigma(A) + roots(det S) - roots(a)^s`` with ``A`` the leading block.

    ``sigma_A`` defaults to a direct eigensolve of ``A``.  With ``compare`` the
    result is matched against ``eig(M)`` at ``match_tol`` (default ``tol``);
    ``tol`` itself drives clustering and the multiset subtraction.
    """
    M = np.asarray(M, dtype=complex)
    A, B, C, D = split_blocks(M, n)
    S = build_forward_S(A, B, C, D, a, tol_annihilate)
    s = D.shape[0]
    budget = KappaBudget(n, s, S.degree - 1)
    known = sigma_A if sigma_A is not None else eig(A, tol)
    if known.size != n:
        raise ShapeError(f"sigma(A) has {known.size} elements, expected {n}")
    removed = poly_roots(poly_coeffs(a), tol).scaled(s)
    latent = latent_roots(S, tol)
    return assemble_reduction(S, budget, latent, known, removed,
                              (lambda: eig(M, tol)) if compare else None,
                              tol if match_tol is None else match_tol, check)


def build_converse_K(M, n: int, m, tol: float = ANNIHILATE_TOL, check: bool = True) -> LambdaMatrix:
    """Trailing ``s x s`` block of ``p(lam I, M; m)`` as a lambda-matrix of degree ``d - 1``."""
    M = np.asarray(M, dtype=complex)
    A, B, C, D = split_blocks(M, n)
    s = D.shape[0]
    c = poly_coeffs(m)
    d = len(c) - 1
    if d < 1:
        raise InvalidAnnihilatorError("annihilator must have positive degree")
    if check:
        _require_annihilates(c, M, tol, "M")
    C0 = M[n:, :]
    B0 = M[:, n:]
    # C0 M^i B0 for i = 0..d-3
    MiB = B0
    CMB = []
    for _ in range(max(d - 2, 0)):
        CMB.append(C0 @ MiB)
        MiB = M @ MiB
    eye = np.eye(s, dtype=complex)
    coeffs = []
    for k in range(d - 1):
        K = c[k + 1] * eye + c[k + 2] * D
        for i in range(d - 2 - k):
            K = K + c[k + 3 + i] * CMB[i]
        coeffs.append(K)
    coeffs.append(c[d] * eye)
    return LambdaMatrix(coeffs)


def spectrum_identity_converse(M, n: int, m, sigma_M: SpectrumMultiset | None = None,
                               tol: float = DEFAULT_TOL, tol_annihilate: float = ANNIHILATE_TOL,
                               compare: bool = True, check: bool = True,
                               match_tol: float | None = None) -> SpectralReduction:
    """``sigma(A) = sigma(M) - roots(m)^s + roots(det K)`` (added before removal)."""
    M = np.asarray(M, dtype=complex)
    K = build_converse_K(M, n, m, tol_annihilate)
    s = M.shape[0] - n
    known = sigma_M if sigma_M is not None else eig(M, tol)
    if known.size != M.shape[0]:
        raise ShapeError(f"sigma(M) has {known.size} elements, expected {M.shape[0]}")
    removed = poly_roots(poly_coeffs(m), tol).scaled(s)
    latent = latent_roots(K, tol)
    A = M[:n, :n]
    return assemble_reduction(K, None, latent, known, removed,
                              (lambda: eig(A, tol)) if compare else None,
                              tol if match_tol is None else match_tol, check)


def householder_to_last(v: np.ndarray) -> np.ndarray:
    """Hermitian unitary reflection whose last column is parallel to ``v``."""
    x = np.asarray(v, dtype=complex).ravel()
    x = x / np.linalg.norm(x)
    n = len(x)
    xn = x[-1]
    alpha = -(xn / abs(xn)) if xn != 0 else -1.0
    w = x.copy()
    w[-1] -= alpha
    ww = np.vdot(w, w).real
    H = np.eye(n, dtype=complex)
    if ww > 1e-30:
        H -= 2.0 * np.outer(w, w.conj()) / ww
    return H


@dataclass
class Deflation:
    M: np.ndarray
    n: int
    a: np.ndarray
    Q: np.ndarray
    budget: KappaBudget
    before: KappaBudget

    def blocks(self):
        return split_blocks(self.M, self.n)


def synthetic_division(c: np.ndarray, root: complex):
    """Quotient (ascending) and remainder of ``c(x) / (x - root)``."""
    d = len(c) - 1
    q = np.zeros(d, dtype=complex)
    q[d - 1] = c[d]
    for i in range(d - 1, 0, -1):
        q[i - 1] = c[i] + root * q[i]
    rem = c[0] + root * q[0]
    return q, rem


def deflate_known_pair(M, n: int, lam0: complex, v0, a, tol: float = 1e-8,
                       tol_annihilate: float = ANNIHILATE_TOL) -> Deflation:
    """Rotate a known eigenpair of the leading block into position ``n`` and move it
    into the trailing block.

    ``Q`` is a Householder reflection with ``Q e_n`` parallel to ``v0``; the
    leading ``(n-1) x (n-1)`` block of ``Q^H A Q`` is annihilated by
    ``a / (x - lam0)``.
    """
    M = np.asarray(M, dtype=complex)
    A, B, C, D = split_blocks(M, n)
    if n < 2:
        raise PreconditionError("the leading block must keep at least one row")
    v = np.asarray(v0, dtype=complex).ravel()
    if v.shape != (n,) or np.linalg.norm(v) == 0:
        raise PreconditionError("v0 must be a nonzero vector of length n")
    res = np.linalg.norm(A @ v - lam0 * v) / (max(1.0, np.linalg.norm(A)) * np.linalg.norm(v))
    if res > tol:
        raise PreconditionError(f"(lam0, v0) is not an eigenpair of A (residual {res:.3g})")
    c = poly_coeffs(a)
    if len(c) < 2:
        raise InvalidAnnihilatorError("annihilator must have positive degree")
    q, rem = synthetic_division(c, lam0)
    scale = float(np.sum(np.abs(c) * np.abs(lam0) ** np.arange(len(c))))
    if abs(rem) > tol * max(1.0, scale):
        raise PreconditionError(f"{lam0} is not a root of the annihilator (remainder {abs(rem):.3g})")
    H = householder_to_last(v)
    Q = np.eye(M.shape[0], dtype=complex)
    Q[:n, :n] = H
    Mt = Q.conj().T @ M @ Q
    n_new = n - 1
    _require_annihilates(q, Mt[:n_new, :n_new], tol_annihilate, "the deflated leading block")
    before = KappaBudget(n, M.shape[0] - n, len(c) - 1)
    return Deflation(Mt, n_new, q, Q, before.deflated(), before)
