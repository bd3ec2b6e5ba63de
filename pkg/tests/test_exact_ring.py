from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schurlike.errors import (
    InvalidAnnihilatorError, NotAnnihilatingError, RingMismatchError, ShapeError,
    UnsupportedRingError,
)
from schurlike.exact_ring import (
    CC, QQ, QQI, ZZ, GaussianRational, RingMatrix, adjugate, adjugate_like, charpoly, det,
    minimal_polynomial, p_eval, pk_eval, poly_ring, quadratic_field, ratfunc_field, rank,
    nullspace,
)

from oracles import cofactor_adjugate, leibniz_det

Rx = poly_ring(QQ, "x")
x = Rx.gen()

small_int = st.integers(-6, 6)
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def int_matrix(n):
    return st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n)


square_int = st.integers(1, 4).flatmap(int_matrix)


class TestPk:
    @pytest.mark.parametrize("k,y,z,want", [(1, 7, 9, 1), (2, 2, 3, 5), (3, 2, 3, 19)])
    def test_examples(self, k, y, z, want):
        assert pk_eval(k, y, z) == want
        assert (y - z) * want == y ** k - z ** k

    def test_k_zero(self):
        with pytest.raises(ValueError):
            pk_eval(0, 1, 2)

    def test_mixed_rings(self):
        with pytest.raises(RingMismatchError):
            pk_eval(2, GaussianRational(1, 1), x)

    @given(st.integers(1, 7), small_q, small_q)
    def test_telescoping(self, k, y, z):
        assert (y - z) * pk_eval(k, y, z) == y ** k - z ** k


class TestPEval:
    def test_symbolic(self):
        Ry = poly_ring(QQ, "y")
        Rz = poly_ring(Ry, "z")
        y = Rz.convert(Ry.gen())
        z = Rz.gen()
        a = Rx([6, -5, 1])
        got = p_eval(a, y, z)
        assert got == y + z - 5
        assert (y - z) * got == (y * y - 5 * y + 6) - (z * z - 5 * z + 6)

    def test_linear(self):
        assert p_eval(x, 4, 11) == 1

    def test_cubic_roots(self):
        a = Rx([6, -5, -2, 1])
        assert p_eval(a, 3, 1) == 0

    def test_zero_poly(self):
        with pytest.raises(InvalidAnnihilatorError):
            p_eval(Rx([]), 1, 2)

    @given(st.lists(small_q, min_size=1, max_size=6).filter(lambda c: c[-1] != 0), small_q, small_q)
    def test_remainder_identity(self, coeffs, y, z):
        a = Rx(coeffs)
        assert (y - z) * p_eval(a, y, z) == a(y) - a(z)


class TestAdjugateLike:
    def test_diag(self):
        X = RingMatrix.diag(ZZ, [2, 3])
        P = adjugate_like(X, Rx([6, -5, 1]), 0)
        assert P.to_lists() == [[-3, 0], [0, -2]]
        assert ((-X) @ P).to_lists() == [[6, 0], [0, 6]]

    def test_symbolic_classical(self):
        Ra = poly_ring(ZZ, "a")
        Rb = poly_ring(Ra, "b")
        Rc = poly_ring(Rb, "c")
        Rd = poly_ring(Rc, "d")
        a_, b_, c_, d_ = (Rd.convert(Rc.convert(Rb.convert(Ra.gen()))), Rd.convert(Rc.convert(Rb.gen())),
                          Rd.convert(Rc.gen()), Rd.gen())
        X = RingMatrix(Rd, [[a_, b_], [c_, d_]])
        P = adjugate_like(X, charpoly(X), 0)
        assert (-P).to_lists() == [[d_, -b_], [-c_, a_]]

    def test_one_by_one_zero(self):
        X = RingMatrix(QQ, [[0]])
        for f in (0, 3, Fraction(-1, 2)):
            P = adjugate_like(X, x, f)
            assert P.to_lists() == [[1]]

    def test_not_annihilating(self):
        with pytest.raises(NotAnnihilatingError):
            adjugate_like(RingMatrix.diag(ZZ, [2, 3]), Rx([-2, 1]), 0)

    def test_inexact_tolerance(self):
        X = RingMatrix(CC, [[2, 0], [0, 3 + 1e-12]])
        adjugate_like(X, Rx([6, -5, 1]), 0)
        with pytest.raises(NotAnnihilatingError):
            adjugate_like(RingMatrix(CC, [[2, 0], [0, 3.01]]), Rx([6, -5, 1]), 0)

    @settings(max_examples=40, deadline=None)
    @given(square_int, small_int)
    def test_both_products(self, rows, f):
        X = RingMatrix(ZZ, rows)
        a = charpoly(X)
        P = adjugate_like(X, a, f)
        n = X.rows
        fI = RingMatrix.identity(ZZ, n).scale(f)
        want = RingMatrix.identity(ZZ, n).scale(a(f))
        assert (fI - X) @ P == want
        assert P @ (fI - X) == want

    @settings(max_examples=40, deadline=None)
    @given(square_int)
    def test_classical_adjugate(self, rows):
        X = RingMatrix(ZZ, rows)
        adj = adjugate(X)
        assert adj.to_lists() == cofactor_adjugate(rows)
        assert X @ adj == RingMatrix.identity(ZZ, X.rows).scale(det(X))


class TestDet:
    @pytest.mark.parametrize("rows,want", [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
        ([[1, 2], [3, 4]], -2),
        ([[2, 0, 1], [0, 2, 0], [1, 0, 1]], 2),
    ])
    def test_examples(self, rows, want):
        assert det(RingMatrix(ZZ, rows)) == want

    def test_non_square(self):
        with pytest.raises(ShapeError):
            det(RingMatrix(ZZ, [[1, 2]]))

    @settings(max_examples=50, deadline=None)
    @given(square_int)
    def test_matches_leibniz_and_bareiss(self, rows):
        M = RingMatrix(ZZ, rows)
        assert det(M) == leibniz_det(rows)
        assert det(M.convert(QQ), method="bareiss") == det(M)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(int_matrix(n), int_matrix(n))))
    def test_multiplicative(self, pair):
        X, Y = (RingMatrix(ZZ, r) for r in pair)
        assert det(X @ Y) == det(X) * det(Y)

    def test_zero_divisors(self):
        # polynomial entries: no division available
        R = poly_ring(ZZ, "t")
        t = R.gen()
        M = RingMatrix(R, [[t, 2], [3, t]])
        assert det(M) == t * t - 6


class TestMinimalPolynomial:
    def test_examples(self):
        assert minimal_polynomial(RingMatrix.diag(QQ, [2, 2, 3])) == Rx([6, -5, 1])
        assert minimal_polynomial(RingMatrix.identity(QQ, 4)) == Rx([-1, 1])
        assert minimal_polynomial(RingMatrix(QQ, [[0, 1], [1, 0]])) == Rx([-1, 0, 1])

    def test_integer_input_promoted(self):
        assert minimal_polynomial(RingMatrix(ZZ, [[0, 1], [1, 0]])) == Rx([-1, 0, 1])

    def test_inexact(self):
        with pytest.raises(UnsupportedRingError):
            minimal_polynomial(RingMatrix(CC, [[1]]))

    def test_gaussian(self):
        i = GaussianRational(0, 1)
        m = minimal_polynomial(RingMatrix(QQI, [[i, 0], [0, i]]))
        assert m.degree() == 1 and m(i) == 0

    @settings(max_examples=40, deadline=None)
    @given(square_int)
    def test_divides_charpoly(self, rows):
        X = RingMatrix(QQ, rows)
        m = minimal_polynomial(X)
        assert X.apply_poly(m).is_zero()
        assert m.is_monic()
        assert (charpoly(X) % m).is_zero()


class TestRingAxioms:
    @given(small_q, small_q, small_q)
    def test_rational(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c

    @settings(max_examples=50)
    @given(*[st.lists(small_int, max_size=4) for _ in range(3)])
    def test_poly(self, p, q, r):
        p, q, r = Rx(p), Rx(q), Rx(r)
        assert (p + q) * r == p * r + q * r
        assert p * (q * r) == (p * q) * r
        assert p * q == q * p

    @settings(max_examples=50)
    @given(*[st.tuples(small_q, small_q) for _ in range(3)])
    def test_gaussian(self, a, b, c):
        a, b, c = (GaussianRational(*v) for v in (a, b, c))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if b != 0:
            assert (a / b) * b == a

    def test_canonical_fraction(self):
        assert Fraction(4, -6) == Fraction(-2, 3)
        F = ratfunc_field(QQ, "t")
        t = F.gen()
        r = (t * 2 + 2) / (t * t * 4 - 4)
        assert r.den.is_monic()
        assert r.den == poly_ring(QQ, "t")([-1, 1])
        assert r.num == poly_ring(QQ, "t")([Fraction(1, 2)])

    @settings(max_examples=30)
    @given(*[st.lists(small_int, min_size=1, max_size=3).filter(any) for _ in range(4)])
    def test_ratfunc_field(self, a, b, c, d):
        F = ratfunc_field(QQ, "t")
        R = poly_ring(QQ, "t")
        u = F.convert(R(a)) / F.convert(R(b))
        v = F.convert(R(c)) / F.convert(R(d))
        assert (u + v) - v == u
        assert (u * v) / v == u
        assert u * v == v * u


class TestQuadratic:
    def test_sqrt2(self):
        K = quadratic_field(2)
        r = K.gen()
        assert r * r == 2
        assert (1 + r) * (1 - r) == -1
        assert abs(complex(r) - 2 ** 0.5) < 1e-15

    def test_nullspace_over_surds(self):
        K = quadratic_field(5)
        phi = (1 + K.gen()) / 2
        M = RingMatrix(K, [[1, -1], [-1, 1]])
        assert rank(M) == 1
        ns = nullspace(M)
        assert len(ns) == 1
        N = RingMatrix(K, [[phi, 1], [1, phi - 1]])
        assert rank(N) == 1
