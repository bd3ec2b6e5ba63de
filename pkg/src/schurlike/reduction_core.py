"""Forward and converse determinant reductions over a generic commutative ring,
plus lifting of kernel vectors of the complement back to the full matrix."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NotAnnihilatingError, PreconditionError, ShapeError
from .exact_ring import (RingMatrix, Poly, det, p_matrix, annihilates, ANNIHILATE_TOL)
from .report import Report, values_equal
from .schur_core import BlockPartition, is_pseudo_inverse

#: relative residual accepted for kernel vectors on the inexact ring
KERNEL_RTOL = 1e-8


def eval_in_ring(a: Poly, f, ring):
    """``a(f)`` with the coefficients of ``a`` coerced into ``ring``."""
    f = ring.convert(f)
    acc = ring.zero()
    for c in reversed(a.coeffs):
        acc = acc * f + ring.convert(c)
    return acc


def _commute(X: RingMatrix, Y: RingMatrix) -> bool:
    return values_equal(X @ Y, Y @ X, X.ring.exact)


def _regular(x, exact: bool) -> bool:
    # nonzero is enough on the integral domains supported here
    if exact:
        return x != 0
    return abs(complex(x)) > 1e-300


@dataclass
class ReductionInstance:
    """Shifted and scaled leading block ``fI - X A Y`` with an annihilator ``a``.

    ``route`` names the certified hypothesis: ``"regular"`` (X and Y have
    nonzero determinant) or ``"commute"`` (A, X, Y pairwise commute).  With
    ``route=None`` regularity is tried first.
    """

    part: BlockPartition
    a: Poly
    f: object = None
    X: Optional[RingMatrix] = None
    Y: Optional[RingMatrix] = None
    route: Optional[str] = None
    tol: float = ANNIHILATE_TOL
    A_shift: RingMatrix = field(init=False)
    P: RingMatrix = field(init=False)
    af: object = field(init=False)
    S: RingMatrix = field(init=False)

    def __post_init__(self):
        ring = self.part.ring
        n = self.part.n
        eye = RingMatrix.identity(ring, n)
        self.X = eye if self.X is None else self.X.convert(ring)
        self.Y = eye if self.Y is None else self.Y.convert(ring)
        if self.X.shape != (n, n) or self.Y.shape != (n, n):
            raise ShapeError("X and Y must be n x n")
        self.f = ring.zero() if self.f is None else ring.convert(self.f)
        self.route = self._certify(self.route)
        A = self.part.A
        self.A_shift = eye.scale(self.f) - self.X @ A @ self.Y
        if not annihilates(self.A_shift, self.a, self.tol):
            raise NotAnnihilatingError(f"{self.a} does not annihilate f I - X A Y")
        self.P = self.Y @ p_matrix(self.f, self.A_shift, self.a) @ self.X
        self.af = eval_in_ring(self.a, self.f, ring)
        if not is_pseudo_inverse(A, self.P, self.af):
            raise PreconditionError("P A = A P = a(f) I fails; the certified hypothesis is not enough")
        self.S = self.part.D.scale(self.af) - self.part.C @ self.P @ self.part.B

    def _certify(self, route):
        exact = self.part.ring.exact
        if route in (None, "regular"):
            if _regular(det(self.X), exact) and _regular(det(self.Y), exact):
                return "regular"
            if route == "regular":
                raise PreconditionError("X or Y is not regular")
        if route in (None, "commute"):
            A = self.part.A
            if _commute(A, self.X) and _commute(A, self.Y) and _commute(self.X, self.Y):
                return "commute"
            raise PreconditionError("neither regularity of X, Y nor pairwise commutation holds")
        raise ValueError(f"unknown route {route!r}")


def reduce_forward(inst: ReductionInstance, raise_on_failure: bool = True):
    """Return ``(S, report)`` where the report checks ``a(f)^s det M = det A det S``."""
    part = inst.part
    rep = Report("forward reduction")
    rep.data["route"] = inst.route
    rep.data["a(f)"] = inst.af
    rep.compare("a(f)^s det(M) = det(A) det(S)", inst.af ** part.s * det(part.M),
                det(part.A) * det(inst.S), part.ring.exact)
    if raise_on_failure:
        rep.require()
    return inst.S, rep


def _as_column(ring, v, size: int, what: str) -> RingMatrix:
    if isinstance(v, RingMatrix):
        col = v.convert(ring)
    else:
        col = RingMatrix.column(ring, [ring.convert(x) for x in v])
    if col.shape != (size, 1):
        raise ShapeError(f"{what} must have {size} entries")
    return col


def _is_null(X: RingMatrix, v: RingMatrix, exact: bool) -> bool:
    r = X @ v
    if exact:
        return r.is_zero()
    scale = max(1.0, float(np.linalg.norm(X.to_numpy())) * float(np.linalg.norm(v.to_numpy())))
    return r.frobenius_norm() <= KERNEL_RTOL * scale


def lift_kernel(inst: ReductionInstance, w_S: Sequence, v0: Optional[Sequence] = None) -> RingMatrix:
    """Kernel vector of ``M`` from a kernel vector ``w_S`` of the complement.

    ``u = (-P B w_S ; a(f) w_S) + (v0 ; 0)`` with ``v0`` in the common kernel of
    ``A`` and ``C``.
    """
    part = inst.part
    ring = part.ring
    exact = ring.exact
    w = _as_column(ring, w_S, part.s, "w_S")
    if not _is_null(inst.S, w, exact):
        raise PreconditionError("w_S is not in the kernel of S")
    top = -(inst.P @ part.B @ w)
    if v0 is not None:
        v = _as_column(ring, v0, part.n, "v0")
        if not (_is_null(part.A, v, exact) and _is_null(part.C, v, exact)):
            raise PreconditionError("v0 is not in ker(A) and ker(C)")
        top = top + v
    u = RingMatrix.block([[top], [w.scale(inst.af)]])
    if not _is_null(part.M, u, exact):
        raise PreconditionError("lifted vector is not in ker(M)")
    return u


@dataclass
class ConverseInstance:
    """``fI - X M`` annihilated by ``m``; ``K`` is the trailing ``s x s`` block
    of ``p(f, fI - X M; m) X``."""

    part: BlockPartition
    m: Poly
    f: object = None
    X: Optional[RingMatrix] = None
    tol: float = ANNIHILATE_TOL
    M_shift: RingMatrix = field(init=False)
    R: RingMatrix = field(init=False)
    mf: object = field(init=False)
    K: RingMatrix = field(init=False)

    def __post_init__(self):
        ring = self.part.ring
        N = self.part.M.rows
        eye = RingMatrix.identity(ring, N)
        self.X = eye if self.X is None else self.X.convert(ring)
        if self.X.shape != (N, N):
            raise ShapeError("X must match M")
        self.f = ring.zero() if self.f is None else ring.convert(self.f)
        self.M_shift = eye.scale(self.f) - self.X @ self.part.M
        if not annihilates(self.M_shift, self.m, self.tol):
            raise NotAnnihilatingError(f"{self.m} does not annihilate f I - X M")
        self.R = p_matrix(self.f, self.M_shift, self.m) @ self.X
        self.mf = eval_in_ring(self.m, self.f, ring)
        if not values_equal(self.R @ self.part.M, eye.scale(self.mf), ring.exact):
            raise PreconditionError("p(f, fI - XM; m) X M = m(f) I fails")
        k = self.part.n
        self.K = self.R[k:, k:]


def reduce_converse(inst: ConverseInstance, raise_on_failure: bool = True):
    """Return ``(K, report)`` where the report checks ``m(f)^s det A = det M det K``."""
    part = inst.part
    rep = Report("converse reduction")
    rep.data["m(f)"] = inst.mf
    rep.compare("m(f)^s det(A) = det(M) det(K)", inst.mf ** part.s * det(part.A),
                det(part.M) * det(inst.K), part.ring.exact)
    if raise_on_failure:
        rep.require()
    return inst.K, rep
