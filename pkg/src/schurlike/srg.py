"""Strongly regular (di)graphs: parameter validation and vertex add/remove spectra.

Parameters follow Duval's directed form ``(n, k, mu, alpha, t)``: the adjacency
matrix satisfies ``A^2 + (mu - alpha) A - (t - mu) I = mu J`` and
``AJ = JA = kJ``.  The undirected case has ``t = k``, and the classical
``(v, k, lambda, mu)`` maps to ``(v, k, mu, lambda, k)``.

Spectra of ``A`` come from exact ranks of ``A - theta I`` at the roots of the
cubic ``(x - k)(x^2 + (mu - alpha) x - (t - mu))``; surd roots are handled in
a quadratic number field.  The vertex pipelines then only solve the small
companion problems numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .eigen_num import (
    DEFAULT_TOL, SpectralReduction, SpectrumMultiset, deflate_known_pair, eig,
    latent_roots, spectrum_identity_converse, spectrum_identity_forward,
)
from .eigen_num.reduction import assemble_reduction, build_forward_S, poly_roots
from .errors import PreconditionError, ShapeError
from .exact_ring import ZZ, QQ, Poly, RingMatrix, poly_ring, quadratic_field, rank
from .report import Report

MATCH_TOL = 1e-8


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    mu: int
    alpha: int
    t: int

    def __post_init__(self):
        if min(self.n, self.k, self.mu, self.alpha, self.t) < 0:
            raise ValueError("SRG parameters are non-negative integers")

    @classmethod
    def undirected(cls, v: int, k: int, lam: int, mu: int) -> "SrgParams":
        """From the classical ``(v, k, lambda, mu)``."""
        return cls(v, k, mu, lam, k)

    @property
    def directed(self) -> bool:
        return self.t < self.k

    def cubic(self) -> Poly:
        """Monic annihilating cubic, coefficients ascending."""
        k, mu, al, t = self.k, self.mu, self.alpha, self.t
        R = poly_ring(ZZ, "x")
        return R([k * (t - mu), mu - t + k * (al - mu), mu - al - k, 1])

    def as_tuple(self):
        return (self.n, self.k, self.mu, self.alpha, self.t)

    def __str__(self):
        return "({}, {}, {}, {}, {})".format(*self.as_tuple())


def _int_matrix(A) -> RingMatrix:
    if isinstance(A, RingMatrix):
        return A if A.ring == ZZ else A.convert(ZZ)
    arr = np.asarray(A)
    if arr.ndim != 2:
        raise ShapeError("adjacency must be a matrix")
    if not np.all(np.equal(np.mod(arr, 1), 0)):
        raise ValueError("adjacency entries must be integers")
    return RingMatrix(ZZ, [[int(x) for x in row] for row in arr])


@dataclass
class SrgValidation:
    valid: bool
    report: Report

    def __bool__(self):
        return self.valid


def validate_srg(A, params: SrgParams) -> SrgValidation:
    """Check the defining relations exactly over the integers.

    Never raises on a bad candidate; the report lists what failed.  The
    cubic's annihilation of ``A`` is checked as a consequence.
    """
    rep = Report(f"SRG validation {params}")
    try:
        X = _int_matrix(A)
    except (ShapeError, ValueError) as exc:
        rep.assert_true(f"integer adjacency matrix ({exc})", False)
        return SrgValidation(False, rep)
    n = params.n
    rep.compare("size", X.shape, (n, n))
    if X.shape != (n, n):
        return SrgValidation(False, rep)
    rows = X.to_lists()
    rep.assert_true("entries are 0/1", all(x in (0, 1) for r in rows for x in r))
    rep.assert_true("zero diagonal", all(rows[i][i] == 0 for i in range(n)))
    eye = RingMatrix.identity(ZZ, n)
    J = RingMatrix(ZZ, [[1] * n for _ in range(n)])
    mu, al, t, k = params.mu, params.alpha, params.t, params.k
    lhs = X @ X + X.scale(mu - al) - eye.scale(t - mu)
    rep.compare("A^2 + (mu-alpha) A - (t-mu) I = mu J", lhs, J.scale(mu), exact=True)
    rep.compare("AJ = kJ", X @ J, J.scale(k), exact=True)
    rep.compare("JA = kJ", J @ X, J.scale(k), exact=True)
    valid = rep.passed
    cubic = params.cubic()
    rep.data["cubic"] = str(cubic)
    rep.compare("cubic(A) = 0", X.apply_poly(cubic).is_zero(), True)
    return SrgValidation(valid and rep.passed, rep)


def require_srg(A, params: SrgParams) -> RingMatrix:
    v = validate_srg(A, params)
    if not v:
        raise PreconditionError(f"adjacency does not validate as SRG{params}\n{v.report.to_text()}")
    return _int_matrix(A)


# -- exact spectrum -------------------------------------------------------

def cubic_roots_exact(params: SrgParams) -> list:
    """Roots of the cubic as exact field elements paired with their field.

    ``k`` is always a root; the other two solve ``x^2 + (mu-alpha) x - (t-mu)``.
    """
    b = params.mu - params.alpha
    c = -(params.t - params.mu)
    disc = b * b - 4 * c
    roots = [(params.k, QQ)]
    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
        r = math.isqrt(disc)
        roots += [(Fraction(-b + r, 2), QQ), (Fraction(-b - r, 2), QQ)]
    else:
        F = quadratic_field(disc)
        half = Fraction(1, 2)
        roots += [(F.gen() * half - Fraction(b, 2), F), (-F.gen() * half - Fraction(b, 2), F)]
    return roots


def sigma_from_rank(A, params: SrgParams, tol: float = DEFAULT_TOL) -> SpectrumMultiset:
    """Spectrum of a validated SRG adjacency matrix from exact ranks.

    The multiplicity of each distinct cubic root ``theta`` is
    ``n - rank(A - theta I)``; the total must be ``n``.
    """
    X = _int_matrix(A)
    n = X.rows
    distinct = []
    for theta, F in cubic_roots_exact(params):
        if not any(theta == other for other, _ in distinct):
            distinct.append((theta, F))
    items = []
    for theta, F in distinct:
        shifted = X.convert(F) - RingMatrix.identity(F, n).scale(F.convert(theta))
        mult = n - rank(shifted)
        if mult:
            items.append((complex(theta), mult))
    out = SpectrumMultiset(items, tol)
    if out.size != n:
        raise PreconditionError(
            f"eigenspace dimensions sum to {out.size}, not {n}; A is not diagonalizable")
    return out


# -- shipped graphs -------------------------------------------------------

def from_edges(n: int, edges: Iterable, directed: bool = False) -> np.ndarray:
    A = np.zeros((n, n), dtype=int)
    for i, j in edges:
        if i == j:
            raise ValueError("self-loops are not allowed")
        A[i, j] = 1
        if not directed:
            A[j, i] = 1
    return A


def petersen() -> np.ndarray:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    verts = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2) if not set(verts[i]) & set(verts[j])]
    return from_edges(10, edges)


PETERSEN_PARAMS = SrgParams(10, 3, 1, 0, 3)


def cycle(n: int) -> np.ndarray:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


CYCLE5_PARAMS = SrgParams(5, 2, 1, 0, 2)


def complete(n: int) -> np.ndarray:
    return np.ones((n, n), dtype=int) - np.eye(n, dtype=int)


def complete_multipartite(parts: Sequence[int]) -> np.ndarray:
    labels = np.repeat(np.arange(len(parts)), parts)
    return (labels[:, None] != labels[None, :]).astype(int)


# -- pipelines ------------------------------------------------------------

@dataclass
class SrgRun:
    """Outcome of an add/remove pipeline."""

    kind: str
    params: SrgParams
    s: int
    kappa: int
    kappa_expected: int
    reduction: SpectralReduction
    sigma_A: SpectrumMultiset
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.reduction.passed and self.kappa == self.kappa_expected

    def report(self) -> Report:
        rep = Report(f"SRG {self.kind} {self.params} s={self.s}")
        red = self.reduction
        rep.data["kappa"] = self.kappa
        rep.data["full size"] = self.params.n + (self.s if self.kind.startswith("add") else -self.s)
        rep.data["sigma(A)"] = str(self.sigma_A)
        rep.data["latent roots"] = str(red.latent)
        rep.data["removed roots"] = str(red.removed)
        rep.data["reconstructed"] = str(red.reconstructed)
        if red.direct is not None:
            rep.data["direct"] = str(red.direct)
            rep.data["max deviation"] = f"{red.deviation:.3e}"
        for key, val in self.extra.items():
            rep.data[key] = val
        rep.compare("reduced size", self.kappa, self.kappa_expected)
        rep.assert_true("reconstructed spectrum matches direct eigensolve", red.passed)
        return rep


def _blocks(n: int, s: int, B, C, D):
    B = np.zeros((n, s), int) if B is None else np.asarray(B, dtype=int).reshape(n, s)
    C = B.T.copy() if C is None else np.asarray(C, dtype=int).reshape(s, n)
    D = np.zeros((s, s), int) if D is None else np.asarray(D, dtype=int).reshape(s, s)
    if any(np.any((X != 0) & (X != 1)) for X in (B, C, D)):
        raise PreconditionError("added blocks must be 0/1")
    if np.any(np.diag(D)):
        raise PreconditionError("added vertices may not carry loops")
    return B, C, D


def add_vertices(A, params: SrgParams, B=None, C=None, D=None, s: Optional[int] = None,
                 deflate: bool = False, tol: float = DEFAULT_TOL,
                 match_tol: float = MATCH_TOL, check: bool = True) -> SrgRun:
    """Spectrum of ``[[A, B], [C, D]]`` from the size-``4s`` companion problem.

    ``C`` defaults to ``B^T`` (undirected attachment).  With ``deflate`` the
    Perron pair ``(k, 1)`` is first rotated into the trailing block and the
    quadratic quotient of the cubic is used, giving ``3(s+1)``.
    """
    X = require_srg(A, params)
    n = params.n
    if s is None:
        s = np.asarray(B).shape[1] if B is not None else (np.asarray(D).shape[0] if D is not None else 1)
    B, C, D = _blocks(n, s, B, C, D)
    M = np.block([[X.to_numpy().real.astype(int), B], [C, D]]).astype(complex)
    sigma_A = sigma_from_rank(X, params, tol)
    cubic = params.cubic()
    if not deflate:
        red = spectrum_identity_forward(M, n, cubic, sigma_A=sigma_A, tol=tol,
                                        check=check, match_tol=match_tol)
        return SrgRun("add", params, s, red.budget.kappa, 4 * s, red, sigma_A)
    dfl = deflate_known_pair(M, n, params.k, np.ones(n), cubic)
    known = sigma_A.subtract(SpectrumMultiset([(params.k, 1)], tol))
    At, Bt, Ct, Dt = dfl.blocks()
    S = build_forward_S(At, Bt, Ct, Dt, dfl.a)
    s1 = s + 1
    latent = latent_roots(S, tol)
    removed = poly_roots(dfl.a, tol).scaled(s1)
    red = assemble_reduction(S, dfl.budget, latent, known, removed, lambda: eig(M, tol), match_tol, check)
    extra = {"deflated quotient": "[" + ", ".join(f"{c.real:g}" for c in dfl.a) + "]",
             "undeflated kappa": dfl.before.kappa}
    return SrgRun("add-deflated", params, s, dfl.budget.kappa, 3 * s1, red, sigma_A, extra)


def _move_last(n: int, removed: Sequence[int]) -> list:
    removed = list(removed)
    if len(set(removed)) != len(removed) or any(not 0 <= v < n for v in removed):
        raise PreconditionError("vertex indices must be distinct and in range")
    return [v for v in range(n) if v not in removed] + removed


def converse_K_exact(A, keep: int, m: Poly) -> list:
    """Integer coefficient matrices of the opponent lambda-matrix, ascending.

    For ``A = [[R, S], [T, U]]`` with ``R`` of size ``keep`` the coefficients
    are ``m_{j+1} I + m_{j+2} U + sum_i m_{j+3+i} T0 A^i S0`` with ``S0``,
    ``T0`` the trailing block column and row.
    """
    X = _int_matrix(A)
    c = [int(x) for x in m.coeffs]
    d = len(c) - 1
    s = X.rows - keep
    U = X[keep:, keep:]
    T0 = X[keep:, :]
    S0 = X[:, keep:]
    eye = RingMatrix.identity(ZZ, s)
    prods = []
    AiS = S0
    for _ in range(max(d - 2, 0)):
        prods.append(T0 @ AiS)
        AiS = X @ AiS
    out = []
    for j in range(d - 1):
        K = eye.scale(c[j + 1]) + U.scale(c[j + 2])
        for i in range(d - 2 - j):
            K = K + prods[i].scale(c[j + 3 + i])
        out.append(K)
    out.append(eye.scale(c[d]))
    return out


def remove_vertices(A, params: SrgParams, vertices: Sequence[int] = None, s: Optional[int] = None,
                    tol: float = DEFAULT_TOL, match_tol: float = MATCH_TOL,
                    check: bool = True) -> SrgRun:
    """Spectrum of ``A`` with ``vertices`` deleted, from a size-``2s`` problem.

    Without ``vertices`` the last ``s`` are removed.
    """
    X = require_srg(A, params)
    n = params.n
    if vertices is None:
        if s is None:
            raise PreconditionError("give vertices or s")
        vertices = list(range(n - s, n))
    s = len(vertices)
    if not 0 < s < n:
        raise PreconditionError("need 0 < s < n")
    X = X.permute(_move_last(n, vertices))
    sigma_A = sigma_from_rank(X, params, tol)
    keep = n - s
    red = spectrum_identity_converse(X.to_numpy(), keep, params.cubic(), sigma_M=sigma_A,
                                     tol=tol, check=check, match_tol=match_tol)
    K = converse_K_exact(X, keep, params.cubic())
    extra = {"K coefficients": "; ".join(str(k.to_lists()) for k in K)}
    deg = red.lam_matrix.degree
    return SrgRun("remove", params, s, deg * s, 2 * s, red, sigma_A, extra)


def single_vertex_K_structure(A, params: SrgParams) -> Report:
    """Every single-vertex deletion gives the same exact ``K`` coefficients."""
    X = require_srg(A, params)
    n = params.n
    rep = Report("vertex independence of K")
    ref = None
    for v in range(n):
        Xv = X.permute(_move_last(n, [v]))
        coeffs = [k.to_lists() for k in converse_K_exact(Xv, n - 1, params.cubic())]
        if ref is None:
            ref = coeffs
            rep.data["K coefficients"] = str([c[0][0] for c in coeffs])
        rep.compare(f"vertex {v}", coeffs, ref)
    return rep
