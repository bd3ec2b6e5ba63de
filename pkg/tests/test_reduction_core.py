import math
import random

import numpy as np
import pytest

from schurlike.errors import NotAnnihilatingError, PreconditionError, ShapeError
from schurlike.exact_ring import (
    CC, QQ, ZZ, RingMatrix, adjugate, charpoly, det, minimal_polynomial, nullspace, poly_ring,
)
from schurlike.reduction_core import (
    ConverseInstance, ReductionInstance, eval_in_ring, lift_kernel, reduce_converse, reduce_forward,
)
from schurlike.schur_core import BlockPartition

from oracles import leibniz_det

Rx = poly_ring(QQ, "x")
Rl = poly_ring(QQ, "lam")
lam = Rl.gen()
P3 = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]


def shifted(M0, ring=Rl):
    n = len(M0)
    return RingMatrix(ring, [[(lam if i == j else 0) - M0[i][j] for j in range(n)] for i in range(n)])


class TestForward:
    def test_path_graph(self):
        part = BlockPartition(shifted(P3), 2)
        inst = ReductionInstance(part, Rx([-1, 0, 1]), f=lam)
        S, rep = reduce_forward(inst)
        assert S.to_lists() == [[lam ** 3 - 2 * lam]]
        assert rep.passed and inst.route == "regular"
        assert inst.af == lam * lam - 1
        assert det(part.M) == lam ** 3 - 2 * lam

    def test_zero_coupling(self):
        M = RingMatrix(ZZ, [[1, 2, 0, 0], [3, 4, 0, 0], [0, 0, 5, 6], [0, 0, 7, 9]])
        part = BlockPartition(M, 2)
        a = charpoly(RingMatrix(ZZ, [[-1, -2], [-3, -4]]))
        inst = ReductionInstance(part, a, f=0)
        S, rep = reduce_forward(inst)
        assert S == part.D.scale(inst.af)
        assert inst.af ** 2 * det(part.A) * det(part.D) == det(part.A) * det(S)

    def test_random_integer(self):
        rng = random.Random(2)
        for _ in range(20):
            rows = [[rng.randint(-5, 5) for _ in range(5)] for _ in range(5)]
            M = RingMatrix(QQ, rows)
            part = BlockPartition(M, 3)
            a = minimal_polynomial(-part.A)
            S, rep = reduce_forward(ReductionInstance(part, a, f=0))
            assert rep.passed
            A_rows = [r[:3] for r in rows[:3]]
            assert a(0) ** 2 * leibniz_det(rows) == leibniz_det(A_rows) * det(S)

    def test_scaled_shifts(self):
        rng = random.Random(9)
        R = poly_ring(QQ, "lam")
        for _ in range(5):
            M0 = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
            part = BlockPartition(shifted(M0), 2)
            X = RingMatrix(R, [[2, 1], [0, 1]])
            # Y = X^-1 keeps f I - X A Y constant in lam
            Y = RingMatrix(R, [[QQ.convert("1/2"), QQ.convert("-1/2")], [0, 1]])
            Ash = RingMatrix.identity(R, 2).scale(lam) - X @ part.A @ Y
            inst = ReductionInstance(part, _charpoly_over(Ash), f=lam, X=X, Y=Y)
            _, rep = reduce_forward(inst)
            assert rep.passed

    def test_commute_route(self):
        A = RingMatrix(QQ, [[1, 1], [0, 1]])
        X = RingMatrix(QQ, [[1, 1], [0, 1]])
        Y = RingMatrix(QQ, [[0, 0], [0, 0]])
        M = RingMatrix.block([[A, RingMatrix(QQ, [[1], [2]])], [RingMatrix(QQ, [[3, 4]]), RingMatrix(QQ, [[5]])]])
        inst = ReductionInstance(BlockPartition(M, 2), Rx([0, 1]), f=0, X=X, Y=Y)
        assert inst.route == "commute"
        _, rep = reduce_forward(inst)
        assert rep.passed
        with pytest.raises(PreconditionError):
            ReductionInstance(BlockPartition(M, 2), Rx([0, 1]), f=0, X=X, Y=Y, route="regular")

    def test_no_route(self):
        M = RingMatrix(QQ, [[1, 2, 0], [0, 1, 0], [1, 1, 1]])
        X = RingMatrix(QQ, [[0, 0], [1, 0]])
        with pytest.raises(PreconditionError):
            ReductionInstance(BlockPartition(M, 2), Rx([0, 1]), f=0, X=X)

    def test_not_annihilating(self):
        part = BlockPartition(shifted(P3), 2)
        with pytest.raises(NotAnnihilatingError):
            ReductionInstance(part, Rx([-1, 1]), f=lam)

    def test_shape(self):
        part = BlockPartition(shifted(P3), 2)
        with pytest.raises(ShapeError):
            ReductionInstance(part, Rx([-1, 0, 1]), f=lam, X=RingMatrix.identity(Rl, 3))


def _charpoly_over(Ash):
    # characteristic polynomial of a constant matrix stored over QQ[lam]
    const = Ash.map(lambda e: e.coeff(0), QQ)
    assert Ash == const.convert(Ash.ring)
    return charpoly(const)


class TestLift:
    def test_path_graph_at_sqrt2(self):
        r2 = math.sqrt(2)
        M = RingMatrix(CC, (r2 * np.eye(3) - np.array(P3)).tolist())
        inst = ReductionInstance(BlockPartition(M, 2), Rx([-1, 0, 1]), f=r2)
        assert abs(complex(inst.S.to_lists()[0][0])) < 1e-12
        u = lift_kernel(inst, [1])
        got = np.array(u.column_values(), dtype=complex)
        assert np.allclose(got, [1, r2, 1], atol=1e-12)
        assert np.linalg.norm(M.to_numpy() @ got) <= 1e-10

    def test_zero_w_with_v0(self):
        M = RingMatrix(QQ, [[1, -1, 0], [1, -1, 0], [1, -1, 2]])
        inst = ReductionInstance(BlockPartition(M, 2), minimal_polynomial(-M[:2, :2]), f=0)
        u = lift_kernel(inst, [0], v0=[1, 1])
        assert u.column_values() == [1, 1, 0]
        assert (M @ u).is_zero()
        with pytest.raises(PreconditionError):
            lift_kernel(inst, [0], v0=[1, 0])

    def test_not_in_kernel(self):
        M = RingMatrix(QQ, [[2, 0, 1], [0, 2, 0], [1, 0, 1]])
        inst = ReductionInstance(BlockPartition(M, 2), minimal_polynomial(-M[:2, :2]), f=0)
        with pytest.raises(PreconditionError):
            lift_kernel(inst, [1])

    def test_random_singular_complement(self):
        rng = random.Random(4)
        done = 0
        while done < 10:
            n, s = 3, 2
            A = RingMatrix(QQ, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            if det(A) == 0:
                continue
            B = RingMatrix(QQ, [[rng.randint(-3, 3) for _ in range(s)] for _ in range(n)])
            C = RingMatrix(QQ, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(s)])
            w = [rng.randint(1, 3), rng.randint(-3, 3)]
            # target complement with kernel vector w
            T = RingMatrix(QQ, [[w[1], -w[0]], [2 * w[1], -2 * w[0]]])
            a = det(A)
            D = (T + C @ adjugate(A) @ B).scale(QQ.exquo(1, a))
            M = RingMatrix.block([[A, B], [C, D]])
            inst = ReductionInstance(BlockPartition(M, n), minimal_polynomial(-A), f=0)
            ker = nullspace(inst.S)
            assert ker
            u = lift_kernel(inst, ker[0])
            assert (M @ u).is_zero()
            assert not u.is_zero()
            done += 1


class TestConverse:
    def test_swap(self):
        part = BlockPartition(shifted([[0, 1], [1, 0]]), 1)
        inst = ConverseInstance(part, Rx([-1, 0, 1]), f=lam)
        K, rep = reduce_converse(inst)
        assert K.to_lists() == [[lam]]
        assert rep.passed
        assert inst.R == RingMatrix(Rl, [[lam, 1], [1, lam]])

    def test_diagonal(self):
        d = [1, 2, 2, 5]
        part = BlockPartition(shifted([[d[i] if i == j else 0 for j in range(4)] for i in range(4)]), 2)
        m = minimal_polynomial(RingMatrix.diag(QQ, d))
        K, rep = reduce_converse(ConverseInstance(part, m, f=lam))
        assert rep.passed
        assert K[0, 1] == 0 and K[1, 0] == 0

    def test_random_rational(self):
        rng = random.Random(6)
        for _ in range(10):
            M0 = [[QQ.convert(f"{rng.randint(-4, 4)}/{rng.randint(1, 3)}") for _ in range(4)] for _ in range(4)]
            m = minimal_polynomial(RingMatrix(QQ, M0))
            K, rep = reduce_converse(ConverseInstance(BlockPartition(shifted(M0), 3), m, f=lam))
            assert rep.passed
            A_rows = [r[:3] for r in shifted(M0).to_lists()[:3]]
            assert eval_in_ring(m, lam, Rl) * leibniz_det(A_rows) == leibniz_det(shifted(M0).to_lists()) * det(K)

    def test_not_annihilating(self):
        with pytest.raises(NotAnnihilatingError):
            ConverseInstance(BlockPartition(shifted([[0, 1], [1, 0]]), 1), Rx([-1, 1]), f=lam)
