import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from schurlike.dominance import (
    MODULUS, AbsValue, is_sd, is_sdd, row_dominance, sd_violating_rows, verify_sdd_closure,
)
from schurlike.errors import IdentityViolation, PoleError, UndefinedPredicateError
from schurlike.exact_ring import CC, QQ, QQI, ZZ, GaussianRational, RingMatrix, ratfunc_field
from schurlike.schur_core import BlockPartition, schur_complement

small = st.integers(-9, 9)


def Z(rows):
    return RingMatrix(ZZ, rows)


def cplx_matrix(n):
    part = st.floats(-5, 5, allow_nan=False)
    return st.lists(st.lists(st.builds(complex, part, part), min_size=n, max_size=n),
                    min_size=n, max_size=n)


def test_sd_examples():
    assert is_sd(Z([[3, 1], [1, 2]]))
    assert not is_sd(Z([[1, 2], [1, 3]]))
    assert is_sd(RingMatrix.identity(ZZ, 5))


def test_sdd_examples():
    assert is_sdd(Z([[1, 2], [1, 3]]))
    assert is_sdd(Z([[3, 1], [1, 2]]))
    assert not is_sdd(Z([[1, 2], [2, 1]]))
    with pytest.raises(UndefinedPredicateError):
        is_sdd(Z([[4]]))


def test_row_dominance_and_violators():
    X = Z([[1, 2], [1, 3]])
    assert row_dominance(X) == [(1, 2), (3, 1)]
    assert sd_violating_rows(X) == [0]


def test_plain_lists_and_gaussian():
    assert is_sd([[2j, 1], [0.5, -1]])
    i = GaussianRational(0, 1)
    X = RingMatrix(QQI, [[i * 3, 1 + i], [1, 2]])
    assert is_sd(X)


def test_inexact_borderline_not_strict():
    X = RingMatrix(CC, [[1.0 + 1e-15, 1.0], [0, 1]])
    assert not is_sd(X)
    assert is_sd(RingMatrix(QQ, [[QQ.convert("1000000000000001/1000000000000000"), 1], [0, 1]]))


def test_pointwise_absolute_value():
    F = ratfunc_field(QQ, "lam")
    lam = F.gen()
    X = RingMatrix(F, [[lam, 1], [1, lam - 3]])
    assert is_sd(X, AbsValue.at(10))
    assert not is_sd(X, AbsValue.at(1))
    with pytest.raises(PoleError):
        is_sd(X)


@settings(max_examples=60)
@given(st.lists(small, min_size=2, max_size=2), st.lists(small, min_size=2, max_size=2))
def test_abs_value_axioms(pair1, pair2):
    r = GaussianRational(*pair1)
    q = GaussianRational(*pair2)
    assert (MODULUS(r) == 0) == (r == 0)
    assert MODULUS(r * q) == pytest.approx(MODULUS(r) * MODULUS(q))
    assert MODULUS(r + q) <= MODULUS(r) + MODULUS(q) + 1e-12


def _principal_submatrices(X):
    n = len(X)
    for k in range(2, n + 1):
        for idx in itertools.combinations(range(n), k):
            yield [[X[i][j] for j in idx] for i in idx]


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5).flatmap(cplx_matrix))
def test_sd_implies_sdd(X):
    if is_sd(X):
        assert is_sdd(X)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5).flatmap(cplx_matrix))
def test_principal_submatrices_inherit(X):
    for pred in (is_sd, is_sdd):
        if pred(X):
            for Y in _principal_submatrices(X):
                assert pred(Y, slack=0.0)
            assert all(abs(X[i][i]) > 0 for i in range(len(X)))


def test_sdd_not_sd_single_bad_row_random():
    g = np.random.default_rng(8)
    found = 0
    for _ in range(4000):
        n = int(g.integers(2, 6))
        X = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
        X[np.diag_indices(n)] *= g.uniform(0.5, 6, n)
        if is_sdd(X.tolist()) and not is_sd(X.tolist()):
            assert len(sd_violating_rows(X.tolist())) == 1
            found += 1
    assert found > 20


def test_cancellation_in_row_sums():
    X = [[1e-38, 1.0], [1e-38, 1.0]]
    assert row_dominance(X)[1] == (1.0, 1e-38)
    assert not is_sdd(X)


def test_sdd_not_sd_single_bad_row_deterministic():
    X = Z([[1, 2, 0], [0, 5, 1], [1, 0, 4]])
    assert is_sdd(X) and not is_sd(X)
    assert sd_violating_rows(X) == [0]


@settings(max_examples=80, deadline=None)
@given(cplx_matrix(2), st.complex_numbers(min_magnitude=1e-3, max_magnitude=10))
def test_two_by_two_scaled_minor(X, p):
    # 1x1 multiplier: the scaled 2x2 minor stays away from zero
    assume(is_sdd(X))
    assert abs(p * X[0][0] * X[1][1] - X[1][0] * p * X[0][1]) > 0


class TestClosure:
    def test_example(self):
        M = Z([[3, 1, 1], [0, 4, 1], [1, 1, 3]])
        part = BlockPartition(M, 1)
        sd = schur_complement(part, Z([[1]]), 3)
        assert sd.S.to_lists() == [[12, 3], [2, 8]]
        rep = verify_sdd_closure(part, sd)
        assert rep.passed
        assert rep.data["M dominance"] == "sd"

    def test_diagonal(self):
        M = RingMatrix.diag(ZZ, [2, -3, 5, 7])
        part = BlockPartition(M, 2)
        sd = schur_complement(part)
        assert sd.S.to_lists() == [[-30, 0], [0, -42]]
        assert verify_sdd_closure(part, sd).passed

    def test_not_dominant(self):
        part = BlockPartition(Z([[1, 2, 2], [2, 1, 2], [2, 2, 1]]), 1)
        sd = schur_complement(part)
        assert not verify_sdd_closure(part, sd, raise_on_failure=False).passed
        with pytest.raises(IdentityViolation):
            verify_sdd_closure(part, sd)

    def test_one_by_one_complement(self):
        M = Z([[1, 2], [1, 3]])
        part = BlockPartition(M, 1)
        sd = schur_complement(part)
        rep = verify_sdd_closure(part, sd)
        assert rep.passed and rep.data["M dominance"] == "sdd"

    def test_random_complex_sdd(self):
        g = np.random.default_rng(3)
        done = 0
        while done < 30:
            X = g.standard_normal((4, 4)) + 1j * g.standard_normal((4, 4))
            X[np.diag_indices(4)] *= g.uniform(1, 4, 4)
            M = RingMatrix(CC, X.tolist())
            if not is_sdd(M) or is_sd(M):
                continue
            part = BlockPartition(M, 2)
            for P, a in [(None, None), (RingMatrix(CC, np.linalg.inv(X[:2, :2]).tolist()), 1)]:
                sd = schur_complement(part, P, a)
                rep = verify_sdd_closure(part, sd)
                assert rep.passed and is_sdd(sd.S)
                assert abs(np.linalg.det(np.array(sd.S.to_lists(), dtype=complex))) > 1e-10
            done += 1

    def test_exact_rational_sd(self):
        g = np.random.default_rng(5)
        for _ in range(20):
            n = int(g.integers(3, 6))
            rows = g.integers(-3, 4, (n, n)).tolist()
            for i in range(n):
                rows[i][i] = sum(abs(v) for j, v in enumerate(rows[i]) if j != i) + int(g.integers(1, 3))
            M = RingMatrix(QQ, rows)
            for k in range(1, n):
                part = BlockPartition(M, k)
                assert verify_sdd_closure(part, schur_complement(part)).passed
