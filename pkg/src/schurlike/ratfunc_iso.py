"""Isospectral size reduction over rational functions in one variable.

Matrices have entries in the field of rational functions over the Gaussian
rationals.  Latent roots are the zeros of the determinant away from the
poles of the entries; region tests (Gershgorin and Brauer) are pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .dominance import is_sd, is_sdd
from .eigen_num import SpectrumMultiset, poly_roots, null_vector
from .errors import LiftingUndefinedError, PoleError, PreconditionError, ShapeError
from .exact_ring import (QQI, Poly, RatFunc, RatFuncField, RingMatrix, det, ratfunc_field)
from .reduction_core import ReductionInstance
from .report import Report, fmt_complex
from .schur_core import BlockPartition

#: separation below which a computed root is treated as coinciding with a pole/root
POINT_TOL = 1e-8
#: relative residual for latent pairs
LATENT_RTOL = 1e-8


def rational_field(var: str = "lam") -> RatFuncField:
    return ratfunc_field(QQI, var)


class RatFuncMatrix:
    """Square (or rectangular) matrix of reduced rational functions with a pole set."""

    def __init__(self, matrix: RingMatrix, field_: Optional[RatFuncField] = None):
        F = field_ or (matrix.ring if isinstance(matrix.ring, RatFuncField) else rational_field())
        self.field = F
        self.matrix = matrix if matrix.ring == F else matrix.convert(F)

    @classmethod
    def from_rows(cls, rows, var: str = "lam") -> "RatFuncMatrix":
        F = rational_field(var)
        return cls(RingMatrix(F, [[F.convert(x) for x in r] for r in rows]), F)

    @classmethod
    def shifted_constant(cls, M0: RingMatrix, var: str = "lam") -> "RatFuncMatrix":
        """``lam I - M0`` for a constant matrix ``M0``."""
        F = rational_field(var)
        lam = F.gen()
        c = M0.convert(F)
        return cls(RingMatrix.identity(F, c.rows).scale(lam) - c, F)

    @property
    def shape(self):
        return self.matrix.shape

    @cached_property
    def common_denominator(self) -> Poly:
        den = None
        for x in self.matrix.entries():
            d = x.den
            if den is None:
                den = d
            else:
                from .exact_ring import poly_gcd
                den = (den * d).exquo(poly_gcd(den, d))
        return den

    @cached_property
    def poles(self) -> np.ndarray:
        den = self.common_denominator
        if den is None or den.degree() < 1:
            return np.zeros(0, dtype=complex)
        return poly_roots(den.complex_coeffs()).values()

    def near_pole(self, lam: complex, tol: float = POINT_TOL) -> bool:
        return bool(np.any(np.abs(self.poles - lam) <= tol * max(1.0, abs(lam))))

    def at(self, lam: complex) -> np.ndarray:
        if self.near_pole(lam, 1e-12):
            raise PoleError(f"{lam} is a pole")
        rows = self.matrix.to_lists()
        return np.array([[x.evaluate(lam) for x in r] for r in rows], dtype=complex)

    def __getitem__(self, idx):
        return RatFuncMatrix(self.matrix[idx], self.field)

    @cached_property
    def det(self) -> RatFunc:
        return det(self.matrix)

    def latent_roots(self, tol: float = 1e-6) -> SpectrumMultiset:
        """Zeros of the determinant outside the pole set."""
        return _zeros_off_poles(self.det, self.poles, tol)

    def __repr__(self):
        return f"RatFuncMatrix({self.matrix})"


def _zeros_off_poles(r: RatFunc, poles: np.ndarray, tol: float = 1e-6) -> SpectrumMultiset:
    num = r.num
    if num.is_zero():
        raise PreconditionError("determinant vanishes identically; every point is a latent root")
    roots = poly_roots(num.complex_coeffs(), tol)
    keep = [(v, m) for v, m in roots.items
            if not np.any(np.abs(poles - v) <= POINT_TOL * max(1.0, abs(v)))]
    return SpectrumMultiset(keep, tol)


def _rf_poly(a, F: RatFuncField) -> Poly:
    """Annihilator with coefficients coerced into ``F``."""
    from .exact_ring import poly_ring
    R = poly_ring(F, a.ring.var) if isinstance(a, Poly) else None
    if R is None:
        raise TypeError("annihilator must be a Poly")
    return Poly(R, [F.convert(c) for c in a.coeffs])


@dataclass
class IsoReduction:
    """Complement ``S = a(f) D - C P B`` of a rational-function matrix."""

    M: RatFuncMatrix
    n: int
    instance: ReductionInstance
    S: RatFuncMatrix
    af: RatFunc
    P: RatFuncMatrix
    report: Report = field(default_factory=lambda: Report("isospectral reduction"))

    @property
    def A(self) -> RatFuncMatrix:
        return self.M[: self.n, : self.n]

    @property
    def B(self) -> RatFuncMatrix:
        return self.M[: self.n, self.n:]

    @cached_property
    def af_roots(self) -> np.ndarray:
        if self.af.num.degree() < 1:
            return np.zeros(0, dtype=complex)
        return poly_roots(self.af.num.complex_coeffs()).values()

    @cached_property
    def domain_poles(self) -> np.ndarray:
        """Poles of ``f``, of the entries of ``M``, ``X``, ``Y`` and of the
        coefficients of ``a``; latent roots are only sought away from these."""
        inst = self.instance
        F = self.M.field
        parts = [self.M.poles, RatFuncMatrix(inst.X, F).poles, RatFuncMatrix(inst.Y, F).poles]
        scalars = [F.convert(inst.f)] + [F.convert(c) for c in inst.a.coeffs]
        parts += [_den_roots(r) for r in scalars]
        return np.concatenate(parts)

    @cached_property
    def exceptional_poles(self) -> np.ndarray:
        return np.concatenate([self.domain_poles, self.S.poles, self.P.poles, _den_roots(self.af)])

    def off_poles(self, roots) -> np.ndarray:
        return np.array([z for z in roots if not _in(self.domain_poles, z, POINT_TOL)], dtype=complex)

    def is_root_of_af(self, lam: complex, tol: float = POINT_TOL) -> bool:
        return bool(np.any(np.abs(self.af_roots - lam) <= tol * max(1.0, abs(lam))))


def _den_roots(r: RatFunc) -> np.ndarray:
    if r.den.degree() < 1:
        return np.zeros(0, dtype=complex)
    return poly_roots(r.den.complex_coeffs()).values()


def _in(points: np.ndarray, z: complex, tol: float) -> bool:
    return bool(np.any(np.abs(points - z) <= tol * max(1.0, abs(z))))


def iso_reduce(M: RatFuncMatrix, n: int, a: Poly, f=None, X: Optional[RingMatrix] = None,
               Y: Optional[RingMatrix] = None, root_tol: float = 1e-6) -> IsoReduction:
    """Reduce ``M`` onto its trailing ``s x s`` block.

    ``a`` must annihilate ``f I - X A Y`` identically; ``X`` and ``Y`` must be
    regular.  The returned report checks the determinant identity exactly
    and the three root containments numerically.
    """
    F = M.field
    part = BlockPartition(M.matrix, n)
    inst = ReductionInstance(part, _rf_poly(a, F), f=f, X=X, Y=Y, route="regular")
    S = RatFuncMatrix(inst.S, F)
    red = IsoReduction(M, n, inst, S, inst.af, RatFuncMatrix(inst.P, F))
    rep = red.report
    s = part.s
    rep.compare("a(f)^s det(M) = det(A) det(S)", inst.af ** s * M.det,
                det(part.A) * S.det, exact=True)
    rep.compare("det(P) det(A) = a(f)^n", det(inst.P) * det(part.A), inst.af ** n, exact=True)
    _root_containment_checks(red, root_tol)
    return red


def _root_containment_checks(red: IsoReduction, tol: float):
    rep = red.report
    lat_A = red.off_poles(red.A.latent_roots(tol).values())
    lat_M = red.off_poles(red.M.latent_roots(tol).values())
    lat_S = red.off_poles(red.S.latent_roots(tol).values())
    afr = red.off_poles(red.af_roots)
    ctol = 1e-5
    rep.assert_true("latent roots of A are roots of a(f)",
                    all(_in(afr, z, ctol) for z in lat_A), lhs=len(lat_A))
    rep.assert_true("latent roots of M are latent roots of S or A",
                    all(_in(lat_S, z, ctol) or _in(lat_A, z, ctol) for z in lat_M), lhs=len(lat_M))
    off = [z for z in lat_S if not _in(afr, z, ctol) and not _in(red.exceptional_poles, z, ctol)]
    rep.assert_true("latent roots of S off the roots of a(f) are latent roots of M",
                    all(_in(lat_M, z, ctol) for z in off), lhs=len(off))


@dataclass
class LatentPair:
    lam: complex
    u: np.ndarray
    residual: float


def lift_latent_pair(red: IsoReduction, lam0: complex, w0: Sequence) -> LatentPair:
    """Latent pair of ``M`` from a latent pair ``(lam0, w0)`` of the complement."""
    w = np.asarray(w0, dtype=complex).ravel()
    s = red.S.shape[0]
    if w.shape != (s,):
        raise ShapeError(f"w0 must have {s} entries")
    if not np.any(w):
        raise PreconditionError("w0 must be nonzero")
    if _in(red.exceptional_poles, lam0, POINT_TOL):
        raise PoleError(f"{lam0} is a pole")
    af0 = red.af.evaluate(lam0)
    if abs(af0) <= POINT_TOL or red.is_root_of_af(lam0):
        raise LiftingUndefinedError(f"{fmt_complex(lam0)} is a root of a(f)")
    S0 = red.S.at(lam0)
    if np.linalg.norm(S0 @ w) > LATENT_RTOL * max(1.0, np.linalg.norm(S0)) * np.linalg.norm(w):
        raise PreconditionError("w0 is not a latent vector of S at lam0")
    top = -(red.P.at(lam0) @ red.B.at(lam0) @ w)
    u = np.concatenate([top, af0 * w])
    M0 = red.M.at(lam0)
    res = float(np.linalg.norm(M0 @ u))
    if res > LATENT_RTOL * max(1.0, np.linalg.norm(M0)) * np.linalg.norm(u):
        raise PreconditionError(f"lifted vector fails the latent residual ({res:.3g})")
    return LatentPair(complex(lam0), u, res)


def latent_vector(X: RatFuncMatrix, lam0: complex) -> np.ndarray:
    """Numeric null vector of ``X(lam0)``."""
    return null_vector(X.at(lam0))


def _values(X, lam):
    return X.at(lam) if isinstance(X, RatFuncMatrix) else np.asarray(X, dtype=complex)


def in_gershgorin(X, lam: complex, atol: float = 0.0) -> bool:
    """``lam`` lies in some row disc ``|X_ii| <= sum_{j != i} |X_ij|``.

    Exactly the complement of strict diagonal dominance of ``X(lam)``.
    """
    return not is_sd(_values(X, lam), atol=atol)


def in_brauer(X, lam: complex, atol: float = 0.0) -> bool:
    """``lam`` lies in some oval ``|X_ii X_kk| <= r_i r_k`` (``i < k``).

    A 1x1 matrix has no pairs of rows; its region is taken to be its
    Gershgorin region so that zeros of the determinant stay inside it.
    """
    vals = _values(X, lam)
    if vals.shape[0] == 1:
        return not is_sd(vals, atol=atol)
    return not is_sdd(vals, atol=atol)


def region_grid(X, points: Iterable[complex]) -> list:
    """``(point, in G, in K)`` rows for plotting."""
    return [(complex(z), in_gershgorin(X, z), in_brauer(X, z)) for z in points]


def grid_points(center: complex = 0, half_width: float = 3.0, count: int = 20) -> list:
    xs = np.linspace(center.real - half_width, center.real + half_width, count)
    ys = np.linspace(center.imag - half_width, center.imag + half_width, count)
    return [complex(x, y) for y in ys for x in xs]


def format_grid(rows) -> str:
    lines = ["point\tinG\tinK"]
    for z, g, k in rows:
        lines.append(f"{fmt_complex(z, 8)}\t{int(g)}\t{int(k)}")
    return "\n".join(lines)


def _membership_atol(vals: np.ndarray, rel: float, power: int) -> float:
    return rel * max(1.0, float(np.abs(vals).max())) ** power


def verify_improved_bounds(red: IsoReduction, sample_points: Iterable[complex],
                           root_tol: float = 1e-6, raise_on_failure: bool = True) -> Report:
    """Pointwise checks of the improved Gershgorin/Brauer containments.

    At each sample point outside ``G(M)`` (``K(M)``) and off the roots of
    ``a(f)``, the point must also lie outside ``G(S)`` (``K(S)``).  Every
    latent root of ``M`` must lie in ``G(S)`` and ``K(S)`` or be a latent root
    of ``A``; membership of computed roots allows a rounding margin.
    """
    rep = Report("improved spectral bounds")
    skipped = 0
    violations_G = violations_K = 0
    checked = 0
    for z in sample_points:
        if _in(red.exceptional_poles, z, POINT_TOL) or red.is_root_of_af(z):
            skipped += 1
            continue
        checked += 1
        Mz, Sz = red.M.at(z), red.S.at(z)
        if not in_gershgorin(Mz, z) and in_gershgorin(Sz, z):
            violations_G += 1
        if not in_brauer(Mz, z) and in_brauer(Sz, z):
            violations_K += 1
    rep.data["sample points checked"] = checked
    rep.data["sample points skipped"] = skipped
    rep.compare("points outside G(M) and off roots(a(f)) but inside G(S)", violations_G, 0)
    rep.compare("points outside K(M) and off roots(a(f)) but inside K(S)", violations_K, 0)
    lat_M = red.off_poles(red.M.latent_roots(root_tol).values())
    lat_A = red.off_poles(red.A.latent_roots(root_tol).values())
    bad_G = bad_K = 0
    for z in lat_M:
        if _in(lat_A, z, 1e-5) or _in(red.exceptional_poles, z, POINT_TOL):
            continue
        Sz = red.S.at(z)
        atol1 = _membership_atol(Sz, 1e-8, 1)
        # the Brauer products are quadratic in the entries
        atolK = atol1 if Sz.shape[0] == 1 else _membership_atol(Sz, 1e-8, 2)
        bad_G += not in_gershgorin(Sz, z, atol=atol1)
        bad_K += not in_brauer(Sz, z, atol=atolK)
    rep.data["latent roots of M"] = len(lat_M)
    rep.compare("latent roots of M outside G(S) and not latent roots of A", bad_G, 0)
    rep.compare("latent roots of M outside K(S) and not latent roots of A", bad_K, 0)
    return rep.require() if raise_on_failure else rep
