"""Schur-like multipliers, complements and opponents over a commutative ring.

For ``M = [[A, B], [C, D]]`` and any ``(P, a)`` with ``P A = A P = a I`` the
Schur-like complement is ``S = a D - C P B``.  Complements are not unique, so
:class:`SchurData` always carries the ``(P, a)`` that produced it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import (NotPseudoInverseError, PreconditionError, QuotientPreconditionError,
                     ShapeError, IdentityViolation)
from .exact_ring import RingMatrix, adjugate, det
from .report import Report, values_equal


@dataclass(frozen=True)
class BlockPartition:
    """Leading ``n x n`` block ``A`` of ``M`` and the remaining ``s`` rows/cols."""

    M: RingMatrix
    n: int

    def __post_init__(self):
        if not self.M.is_square():
            raise ShapeError("block partition of a non-square matrix")
        if not 1 <= self.n < self.M.rows:
            raise ShapeError(f"split n={self.n} invalid for size {self.M.rows}")

    @property
    def ring(self):
        return self.M.ring

    @property
    def s(self) -> int:
        return self.M.rows - self.n

    @property
    def A(self) -> RingMatrix:
        return self.M[: self.n, : self.n]

    @property
    def B(self) -> RingMatrix:
        return self.M[: self.n, self.n:]

    @property
    def C(self) -> RingMatrix:
        return self.M[self.n:, : self.n]

    @property
    def D(self) -> RingMatrix:
        return self.M[self.n:, self.n:]


def _eq(x, y, exact: bool) -> bool:
    return values_equal(x, y, exact)


def is_pseudo_inverse(A: RingMatrix, P: RingMatrix, a) -> bool:
    """``P A = A P = a I`` (exactly, or to relative tolerance on inexact rings)."""
    aI = RingMatrix.identity(A.ring, A.rows).scale(a)
    exact = A.ring.exact
    return _eq(P @ A, aI, exact) and _eq(A @ P, aI, exact)


def adjugate_strategy(A: RingMatrix):
    """Default ``(P, a)``: classical adjugate and determinant; exists over any ring."""
    return adjugate(A), det(A)


@dataclass(frozen=True)
class SchurData:
    P: RingMatrix
    a: object
    S: RingMatrix
    L: RingMatrix
    U: RingMatrix


def schur_complement(part: BlockPartition, P: Optional[RingMatrix] = None, a=None) -> SchurData:
    """Schur-like complement ``S = a D - C P B`` with left/right multipliers.

    Without ``P`` the classical adjugate of ``A`` and ``a = det A`` are used.
    """
    ring = part.ring
    A, B, C, D = part.A, part.B, part.C, part.D
    if P is None:
        P, a = adjugate_strategy(A)
    a = ring.convert(a)
    if P.is_zero() and a == 0:
        raise NotPseudoInverseError("(P, a) must not both vanish")
    if not is_pseudo_inverse(A, P, a):
        raise NotPseudoInverseError("P A = A P = a I does not hold")
    n, s = part.n, part.s
    PB = P @ B
    S = D.scale(a) - C @ PB
    In = RingMatrix.identity(ring, n)
    aIs = RingMatrix.identity(ring, s).scale(a)
    L = RingMatrix.block([[In, RingMatrix.zeros(ring, n, s)], [-(C @ P), aIs]])
    U = RingMatrix.block([[In, -PB], [RingMatrix.zeros(ring, s, n), aIs]])
    return SchurData(P, a, S, L, U)


def multiplier_report(part: BlockPartition, sd: SchurData) -> Report:
    """The three block identities ``L M``, ``M U`` and ``L M U``."""
    ring = part.ring
    exact = ring.exact
    A, B, C, S = part.A, part.B, part.C, sd.S
    n, s = part.n, part.s
    Z_sn, Z_ns = RingMatrix.zeros(ring, s, n), RingMatrix.zeros(ring, n, s)
    rep = Report("schur-like multipliers")
    LM = sd.L @ part.M
    rep.compare("L M = [[A, B], [0, S]]", LM, RingMatrix.block([[A, B], [Z_sn, S]]), exact)
    rep.compare("M U = [[A, 0], [C, S]]", part.M @ sd.U, RingMatrix.block([[A, Z_ns], [C, S]]), exact)
    rep.compare("L M U = [[A, 0], [0, a S]]", LM @ sd.U,
                RingMatrix.block([[A, Z_ns], [Z_sn, S.scale(sd.a)]]), exact)
    return rep


@dataclass(frozen=True)
class OpponentData:
    R: RingMatrix
    m: object
    s: int

    @property
    def R_D(self) -> RingMatrix:
        k = self.R.rows - self.s
        return self.R[k:, k:]


def opponent(part: BlockPartition, R: Optional[RingMatrix] = None, m=None) -> OpponentData:
    """Opponent data ``R M = m I``; defaults to the classical adjugate of ``M``."""
    M = part.M
    if R is None:
        R, m = adjugate_strategy(M)
    m = M.ring.convert(m)
    if R.is_zero() and m == 0:
        raise PreconditionError("(R, m) must not both vanish")
    if not _eq(R @ M, RingMatrix.identity(M.ring, M.rows).scale(m), M.ring.exact):
        raise PreconditionError("R M = m I does not hold")
    return OpponentData(R, m, part.s)


def verify_determinant_identities(part: BlockPartition, sd: SchurData,
                                  opp: Optional[OpponentData] = None, raise_on_failure: bool = True) -> Report:
    """``a^s det M = det A det S`` and, with an opponent, ``det(R_D) det M = det A m^s``."""
    ring = part.ring
    s = part.s
    dM, dA = det(part.M), det(part.A)
    rep = Report("complement and opponent determinant identities")
    rep.compare("a^s det(M) = det(A) det(S)", sd.a ** s * dM, dA * det(sd.S), ring.exact)
    if opp is not None:
        rep.compare("det(R_D) det(M) = det(A) m^s", det(opp.R_D) * dM, dA * opp.m ** s, ring.exact)
    return rep.require() if raise_on_failure else rep


def verify_opponent_relation(part: BlockPartition, sd: SchurData, opp: OpponentData,
                             raise_on_failure: bool = True) -> Report:
    """``R_D S = a m I`` and the block form of ``a^2 R M``."""
    ring = part.ring
    exact = ring.exact
    P, a, S, m = sd.P, sd.a, sd.S, opp.m
    B, C = part.B, part.C
    RD = opp.R_D
    rep = Report("opponent-complement relation")
    rep.compare("R_D S = a m I_s", RD @ S, RingMatrix.identity(ring, part.s).scale(a * m), exact)
    PB = P @ B
    CP = C @ P
    PBRD = PB @ RD
    top_left = P.scale(a * m) + PBRD @ CP
    blk = RingMatrix.block([[top_left, -PBRD.scale(a)], [-(RD @ CP).scale(a), RD.scale(a * a)]])
    rep.compare("a^2 R M = [[amP + PB R_D CP, -a PB R_D], [-a R_D CP, a^2 R_D]] M",
                (opp.R @ part.M).scale(a * a), blk @ part.M, exact)
    return rep.require() if raise_on_failure else rep


PseudoInverseStrategy = Callable[[RingMatrix], tuple]


@dataclass(frozen=True)
class QuotientResult:
    S_seq: RingMatrix
    S_direct: RingMatrix
    factor: object  # S_seq = factor * S_direct
    steps: tuple  # (P, a) used at each 1x1 step


def _exact_ratio(x, y, ring):
    return ring.exquo(x, y)


def quotient_sequence(M: RingMatrix, n_tilde: int,
                      strategy: Optional[PseudoInverseStrategy] = None,
                      direct_strategy: PseudoInverseStrategy = adjugate_strategy) -> QuotientResult:
    """Compare ``n_tilde`` sequential 1x1 complements with the one-shot complement.

    Returns ``factor`` with ``S_seq = factor * S_direct``.  Every leading
    principal minor up to ``n_tilde`` must be nonzero (integral domains only:
    nonzero then means regular).
    """
    ring = M.ring
    if not M.is_square() or not 1 <= n_tilde < M.rows:
        raise ShapeError("need 1 <= n_tilde < size(M)")
    defaults = strategy in (None, adjugate_strategy) and direct_strategy is adjugate_strategy
    strategy = strategy or adjugate_strategy
    for k in range(1, n_tilde + 1):
        if det(M[:k, :k]) == 0:
            raise QuotientPreconditionError(f"leading minor of order {k} is not regular")
    cur = M
    steps = []
    for _ in range(n_tilde):
        sd = schur_complement(BlockPartition(cur, 1), *strategy(cur[:1, :1]))
        steps.append((sd.P, sd.a))
        cur = sd.S
    direct = schur_complement(BlockPartition(M, n_tilde), *direct_strategy(M[:n_tilde, :n_tilde])).S
    pivot = next((x for x in direct.entries() if x != 0), None)
    if pivot is None:
        if not cur.is_zero():
            raise IdentityViolation("direct complement vanishes but sequential one does not")
        # any scalar fits a zero complement; report the one the pivots produce
        factor = quotient_factor_closed_form(M, n_tilde) if defaults else ring.one()
    else:
        i = list(direct.entries()).index(pivot)
        factor = _exact_ratio(list(cur.entries())[i], pivot, ring)
    if factor == 0:
        raise IdentityViolation("quotient factor is zero")
    if cur != direct.scale(factor):
        raise IdentityViolation("S_seq is not a scalar multiple of S_direct")
    return QuotientResult(cur, direct, factor, tuple(steps))


def quotient_factor_closed_form(M: RingMatrix, n_tilde: int):
    """``prod_{j<n} det(A_j)^(2^(n-1-j))`` for the default 1x1 strategy."""
    out = M.ring.one()
    for j in range(1, n_tilde):
        out = out * det(M[:j, :j]) ** (2 ** (n_tilde - 1 - j))
    return out
