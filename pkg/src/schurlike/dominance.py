"""Absolute values on rings and strict (double) diagonal dominance."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import UndefinedPredicateError, PoleError, ShapeError
from .exact_ring import RingMatrix, RatFunc, det, to_complex
from .report import Report
from .schur_core import BlockPartition, SchurData

#: relative slack for strict inequalities evaluated in floating point
STRICT_RTOL = 1e-12


@dataclass(frozen=True)
class AbsValue:
    """A multiplicative absolute value ``|.|`` on a ring.

    The default is the modulus after embedding into the complex numbers,
    which covers integers, rationals, Gaussian rationals and complex floats.
    Rational functions need an evaluation ``point``; the value is then
    ``|r(point)|``.
    """

    point: Optional[complex] = None
    fn: Optional[Callable] = None

    def __call__(self, r) -> float:
        if self.fn is not None:
            return float(self.fn(r))
        if isinstance(r, RatFunc):
            if self.point is None:
                raise PoleError("rational-function absolute value needs an evaluation point")
            return abs(r.evaluate(self.point))
        if hasattr(r, "eval_complex"):
            if self.point is None:
                raise TypeError("polynomial absolute value needs an evaluation point")
            return abs(r.eval_complex(self.point))
        return abs(to_complex(r))

    @classmethod
    def at(cls, point: complex) -> "AbsValue":
        return cls(point=complex(point))


MODULUS = AbsValue()


def _abs_table(X, av: AbsValue):
    if isinstance(X, RingMatrix):
        if not X.is_square():
            raise ShapeError("dominance predicates need a square matrix")
        rows = X.to_lists()
    else:
        rows = [list(r) for r in X]
        if any(len(r) != len(rows) for r in rows):
            raise ShapeError("dominance predicates need a square matrix")
    absx = [[av(x) for x in row] for row in rows]
    diag = [absx[i][i] for i in range(len(absx))]
    off = [sum(v for k, v in enumerate(row) if k != i) for i, row in enumerate(absx)]
    return diag, off


def _gt(lhs: float, rhs: float, slack: float, atol: float = 0.0) -> bool:
    return lhs > rhs + slack * max(abs(lhs), abs(rhs)) + atol


def _slack(X) -> float:
    ring = getattr(X, "ring", None)
    return 0.0 if ring is not None and ring.exact else STRICT_RTOL


def row_dominance(X, av: AbsValue = MODULUS):
    """Per-row ``(|X_ii|, sum_{k != i} |X_ik|)``."""
    return list(zip(*_abs_table(X, av)))


def is_sd(X, av: AbsValue = MODULUS, slack: float | None = None, atol: float = 0.0) -> bool:
    """``|X_ii| > sum_{k != i} |X_ik|`` for every row.

    ``slack`` (relative) and ``atol`` (absolute) widen the margin a row needs
    before it counts as strictly dominant.
    """
    diag, off = _abs_table(X, av)
    eps = _slack(X) if slack is None else slack
    return all(_gt(d, o, eps, atol) for d, o in zip(diag, off))


def is_sdd(X, av: AbsValue = MODULUS, slack: float | None = None, atol: float = 0.0) -> bool:
    """``|X_ii X_jj| > r_i r_j`` for every pair of distinct rows ``i != j``.

    Size-1 matrices have no pairs and the predicate is left undefined.
    """
    diag, off = _abs_table(X, av)
    n = len(diag)
    if n < 2:
        raise UndefinedPredicateError("sdd needs size >= 2")
    eps = _slack(X) if slack is None else slack
    return all(_gt(diag[i] * diag[j], off[i] * off[j], eps, atol)
               for i in range(n) for j in range(i + 1, n))


def _dominant_kind(X, av, slack=None) -> Optional[str]:
    if is_sd(X, av, slack):
        return "sd"
    size = X.rows if isinstance(X, RingMatrix) else len(X)
    if size >= 2 and is_sdd(X, av, slack):
        return "sdd"
    return None


def _nonzero(x, exact: bool, floor: float) -> bool:
    return x != 0 if exact else abs(to_complex(x)) > floor


def verify_sdd_closure(part: BlockPartition, sd: SchurData, av: AbsValue = MODULUS,
                       det_floor: float = 1e-10, raise_on_failure: bool = True) -> Report:
    """A dominant ``M`` passes its dominance to the complement, and all of
    ``det M``, ``det A``, ``det S`` are nonzero.

    A 1x1 complement counts as inheriting either property when it is nonzero.
    """
    M = part.M
    exact = part.ring.exact
    kind = _dominant_kind(M, av)
    rep = Report("dominance closure of the complement")
    rep.data["M dominance"] = kind or "none"
    if kind is None:
        rep.assert_true("M is sd or sdd", False)
        return rep.require() if raise_on_failure else rep
    S = sd.S
    if S.rows == 1:
        inherited = av(S.to_lists()[0][0]) > 0
    elif kind == "sd":
        inherited = is_sd(S, av)
    else:
        inherited = is_sdd(S, av)
    rep.assert_true(f"S is {kind}", inherited)
    for name, val in (("det(M)", det(M)), ("det(A)", det(part.A)), ("det(S)", det(S))):
        rep.assert_true(f"{name} != 0", _nonzero(val, exact, det_floor), lhs=val, rhs=0)
    return rep.require() if raise_on_failure else rep


def sd_violating_rows(X, av: AbsValue = MODULUS) -> list:
    """Row indices failing the sd row condition."""
    diag, off = _abs_table(X, av)
    eps = _slack(X)
    return [i for i, (d, o) in enumerate(zip(diag, off)) if not _gt(d, o, eps)]
