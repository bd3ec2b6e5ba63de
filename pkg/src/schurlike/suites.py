"""Seeded randomized identity suites.

Exact suites draw integer matrices or matrices over ``Q[lam]``; numeric
suites draw complex matrices.  Every case is generated from its own
sub-seed so results do not depend on evaluation order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .dominance import is_sd, is_sdd, verify_sdd_closure
from .eigen_num import SpectrumMultiset, spectrum_identity_converse, spectrum_identity_forward
from .eigen_num.multiset import DEFAULT_TOL
from .errors import SchurLikeError
from .exact_ring import (
    CC, QQ, ZZ, ANNIHILATE_TOL, RingMatrix, adjugate, adjugate_like, charpoly, det, poly_ring,
)
from .report import Report
from .schur_core import (
    BlockPartition, multiplier_report, opponent, quotient_factor_closed_form, quotient_sequence,
    schur_complement, verify_determinant_identities, verify_opponent_relation,
)

POLY = poly_ring(QQ, "lam")
RINGS = ("int", "poly")
#: entry degree bound for polynomial draws
MAX_DEGREE = 4


@dataclass
class CaseResult:
    index: int
    passed: bool
    summary: str
    report: Report | None = None


@dataclass
class SuiteResult:
    name: str
    seed: int
    ring: str
    cases: list = field(default_factory=list)

    @property
    def passed_count(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def passed(self) -> bool:
        return self.passed_count == len(self.cases)

    def to_text(self, verbose: bool = False) -> str:
        lines = [f"suite: {self.name}", f"seed: {self.seed}", f"ring: {self.ring}",
                 f"count: {len(self.cases)}"]
        for c in self.cases:
            lines.append(f"case {c.index}: {'PASS' if c.passed else 'FAIL'} {c.summary}")
            if verbose and c.report is not None and not c.passed:
                lines.extend("  " + ln for ln in c.report.to_text().splitlines())
        lines.append(f"passed: {self.passed_count}/{len(self.cases)}")
        lines.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# -- generators ----------------------------------------------------------

def _scalar(rng: random.Random, ring: str, max_degree: int = MAX_DEGREE):
    if ring == "int":
        return rng.randint(-4, 4)
    deg = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3))) for _ in range(deg + 1)]
    return POLY(coeffs)


def random_matrix(rng: random.Random, ring: str, rows: int, cols: int | None = None,
                  max_degree: int = MAX_DEGREE) -> RingMatrix:
    """Small random matrix over ``ZZ`` (``"int"``) or ``Q[lam]`` (``"poly"``)."""
    cols = rows if cols is None else cols
    R = ZZ if ring == "int" else POLY
    return RingMatrix(R, [[_scalar(rng, ring, max_degree) for _ in range(cols)] for _ in range(rows)])


def _shape(rng: random.Random, max_size: int = 6):
    size = rng.randint(2, max_size)
    return size, rng.randint(1, size - 1)


def _pseudo_inverse(rng: random.Random, A: RingMatrix):
    """``(P, a)`` with ``PA = AP = aI``: the adjugate, a scaled adjugate or
    the adjugate-like matrix from the characteristic polynomial at 0."""
    ring = A.ring
    kind = rng.randrange(3)
    if kind == 0:
        return adjugate(A), det(A), "adj"
    if kind == 1:
        c = ring.convert(rng.choice((-3, -2, 2, 3)))
        return adjugate(A).scale(c), det(A) * c, "scaled-adj"
    cp = charpoly(A)
    P = adjugate_like(A, cp, ring.zero(), check=False)
    # (0 I - A) P = cp(0) I
    return -P, cp.coeffs[0] if cp.coeffs else ring.zero(), "charpoly-at-0"


def _nonvanishing(P, a) -> bool:
    return not (P.is_zero() and a == 0)


# -- exact suites ----------------------------------------------------------

def _case_determinants(rng, ring):
    size, n = _shape(rng)
    M = random_matrix(rng, ring, size)
    part = BlockPartition(M, n)
    P, a, how = _pseudo_inverse(rng, part.A)
    if not _nonvanishing(P, a):
        P, a, how = adjugate(part.A), det(part.A), "adj"
        if not _nonvanishing(P, a):
            return None
    sd = schur_complement(part, P, a)
    R, m, _ = _pseudo_inverse(rng, M)
    if not _nonvanishing(R, m):
        return None
    opp = opponent(part, R, m)
    rep = verify_determinant_identities(part, sd, opp, raise_on_failure=False)
    rep.checks.extend(multiplier_report(part, sd).checks)
    return rep, f"size={size} n={n} P={how}"


def _case_opponent(rng, ring):
    size, n = _shape(rng)
    M = random_matrix(rng, ring, size)
    part = BlockPartition(M, n)
    P, a, how = _pseudo_inverse(rng, part.A)
    if not _nonvanishing(P, a):
        return None
    sd = schur_complement(part, P, a)
    R, m, how_r = _pseudo_inverse(rng, M)
    if not _nonvanishing(R, m):
        return None
    rep = verify_opponent_relation(part, sd, opponent(part, R, m), raise_on_failure=False)
    return rep, f"size={size} n={n} P={how} R={how_r}"


def _cofactor_adjugate(X: RingMatrix) -> RingMatrix:
    n = X.rows
    if n == 1:
        return RingMatrix.identity(X.ring, 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            keep_r = [r for r in range(n) if r != j]
            keep_c = [c for c in range(n) if c != i]
            minor = RingMatrix(X.ring, [[X.data[r][c] for c in keep_c] for r in keep_r])
            c = det(minor, method="bareiss")
            row.append(c if (i + j) % 2 == 0 else -c)
        rows.append(row)
    return RingMatrix(X.ring, rows)


def _case_adjugate(rng, ring):
    n = rng.randint(1, 5)
    X = random_matrix(rng, ring, n)
    R = X.ring
    cp = charpoly(X)
    # an annihilator of degree up to n + 1
    if rng.random() < 0.5:
        r = R.convert(rng.randint(-3, 3))
        a = cp * poly_ring(R, cp.ring.var)([-r, R.one()])
    else:
        a = cp
    f = R.convert(_scalar(rng, ring, 1))
    P = adjugate_like(X, a, f)
    shift = RingMatrix.identity(R, n).scale(f) - X
    af = sum((c * f ** k for k, c in enumerate(a.coeffs)), R.zero())
    target = RingMatrix.identity(R, n).scale(af)
    rep = Report("adjugate-like identities")
    rep.compare("(fI - X) P = a(f) I", shift @ P, target)
    rep.compare("P (fI - X) = a(f) I", P @ shift, target)
    adj = adjugate(X)
    dX = det(X, method="bareiss")
    eye_d = RingMatrix.identity(R, n).scale(dX)
    rep.compare("X adj(X) = det(X) I", X @ adj, eye_d)
    rep.compare("adj(X) X = det(X) I", adj @ X, eye_d)
    rep.compare("adj(X) equals the cofactor transpose", adj, _cofactor_adjugate(X))
    return rep, f"size={n} deg(a)={a.degree()}"


def _case_quotient(rng, ring):
    for _ in range(20):
        size = rng.randint(3, 6)
        nt = rng.randint(2, size - 1)
        M = random_matrix(rng, ring, size)
        if all(det(M[:k, :k]) != 0 for k in range(1, nt + 1)):
            break
    else:
        return None
    res = quotient_sequence(M, nt)
    rep = Report("quotient property")
    rep.compare("S_seq = factor S_direct", res.S_seq, res.S_direct.scale(res.factor))
    rep.assert_true("factor != 0", res.factor != 0, lhs=res.factor)
    closed = quotient_factor_closed_form(M, nt)
    rep.compare("S_seq = prod det(A_j)^(2^(n-1-j)) S_direct", res.S_seq, res.S_direct.scale(closed))
    rep.compare("factor = prod det(A_j)^(2^(n-1-j))", res.factor, closed)
    return rep, f"size={size} n_tilde={nt} factor={res.factor}"


# -- numeric suites ----------------------------------------------------------

def _cplx(g: np.random.Generator, *shape):
    return g.standard_normal(shape) + 1j * g.standard_normal(shape)


def random_dominant(g: np.random.Generator, size: int, kind: str) -> np.ndarray:
    """Random complex sd matrix, or sdd matrix with exactly one non-dominant row."""
    X = _cplx(g, size, size)
    np.fill_diagonal(X, 0)
    r = np.abs(X).sum(axis=1)
    r[r == 0] = 1.0
    phases = np.exp(2j * np.pi * g.random(size))
    if kind == "sd":
        ratio = 1.05 + g.random(size)
    else:
        weak = g.integers(size)
        c0 = 0.5 + 0.4 * g.random()
        ratio = (1.05 + g.random(size)) / c0
        ratio[weak] = c0
    np.fill_diagonal(X, phases * r * ratio)
    return X


def _case_sdd(g, kind):
    size = int(g.integers(2, 7))
    n = int(g.integers(1, min(3, size - 1) + 1))
    X = random_dominant(g, size, kind)
    M = RingMatrix(CC, X.tolist())
    part = BlockPartition(M, n)
    rep = verify_sdd_closure(part, schur_complement(part), raise_on_failure=False)
    if kind == "sdd":
        rep.assert_true("M is sdd but not sd", is_sdd(X) and not is_sd(X))
    return rep, f"kind={kind} size={size} n={n}"


def _low_degree_matrix(g, size: int, max_distinct: int = 3, cond_cap: float = 1e3):
    """``V diag(theta) V^-1`` with at most ``max_distinct`` eigenvalues."""
    k = int(g.integers(1, max_distinct + 1))
    thetas = np.round(_cplx(g, k) * 2, 3)
    labels = np.concatenate([np.arange(k), g.integers(0, k, size - k)]) if size >= k else np.arange(size)
    labels = g.permutation(labels[:size])
    used = sorted(set(int(x) for x in labels))
    for _ in range(50):
        V = _cplx(g, size, size)
        if np.linalg.cond(V) < cond_cap:
            break
    X = V @ np.diag(thetas[labels]) @ np.linalg.inv(V)
    roots = [thetas[i] for i in used]
    coeffs = np.poly(roots)[::-1]  # ascending
    spec = SpectrumMultiset([(thetas[i], int(np.sum(labels == i))) for i in used])
    return X, coeffs, spec


def _case_forward(g, tol, match_tol, tol_annihilate):
    s = int(g.integers(1, 3))
    n = int(g.integers(1, 8 - s + 1))
    A, a, spec = _low_degree_matrix(g, n)
    M = np.block([[A, _cplx(g, n, s)], [_cplx(g, s, n), _cplx(g, s, s)]])
    red = spectrum_identity_forward(M, n, a, sigma_A=spec, tol=tol, tol_annihilate=tol_annihilate,
                                    check=False, match_tol=match_tol)
    rep = Report("forward spectrum identity")
    rep.data["budget"] = f"kappa={red.budget.kappa} full={red.budget.full_size}"
    rep.assert_true("reconstructed matches direct", red.passed, lhs=f"{red.deviation:.3e}")
    return rep, f"n={n} s={s} d={len(a) - 1} kappa={red.budget.kappa} dev={red.deviation:.2e}"


def _case_converse(g, tol, match_tol, tol_annihilate):
    s = int(g.integers(1, 3))
    n = int(g.integers(1, 8 - s + 1))
    M, m, spec = _low_degree_matrix(g, n + s)
    red = spectrum_identity_converse(M, n, m, sigma_M=spec, tol=tol, tol_annihilate=tol_annihilate,
                                     check=False, match_tol=match_tol)
    rep = Report("converse spectrum identity")
    rep.assert_true("reconstructed matches direct", red.passed, lhs=f"{red.deviation:.3e}")
    return rep, f"n={n} s={s} d={len(m) - 1} dev={red.deviation:.2e}"


EXACT_SUITES: dict = {
    "determinants": _case_determinants,
    "opponent": _case_opponent,
    "adjugate": _case_adjugate,
    "quotient": _case_quotient,
}
NUMERIC_SUITES = ("sd", "sdd", "forward", "converse")
SUITES = tuple(EXACT_SUITES) + NUMERIC_SUITES


def _sub_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) & 0xFFFFFFFF


def _run_case(fn: Callable, index: int, attempts: int = 20):
    for _ in range(attempts):
        try:
            out = fn(index)
        except SchurLikeError as exc:
            return CaseResult(index, False, f"error: {exc}")
        if out is not None:
            rep, summary = out
            return CaseResult(index, rep.passed, summary, rep)
        index += 1 << 20  # degenerate draw; move to a fresh sub-seed
    return CaseResult(index, False, "no admissible case drawn")


def run_suite(name: str, seed: int = 0, count: int = 10, ring: str = "int",
              tol: float = DEFAULT_TOL, match_tol: float | None = None,
              tol_annihilate: float = ANNIHILATE_TOL) -> SuiteResult:
    """Run ``count`` cases of a named suite; deterministic for a given seed."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    match_tol = tol if match_tol is None else match_tol
    if name in EXACT_SUITES:
        if ring not in RINGS:
            raise KeyError(f"unknown ring {ring!r}; known: {', '.join(RINGS)}")
        case = EXACT_SUITES[name]

        def fn(i):
            return case(random.Random(_sub_seed(seed, i)), ring)
    else:
        ring = "complex"
        if name in ("sd", "sdd"):
            def fn(i):
                return _case_sdd(np.random.default_rng(_sub_seed(seed, i)), name)
        else:
            case = _case_forward if name == "forward" else _case_converse

            def fn(i):
                return case(np.random.default_rng(_sub_seed(seed, i)), tol, match_tol, tol_annihilate)
    result = SuiteResult(name, seed, ring)
    for i in range(count):
        cr = _run_case(fn, i)
        cr.index = i
        result.cases.append(cr)
    return result
