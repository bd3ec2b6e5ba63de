"""Dense matrices over a :class:`~schurlike.exact_ring.rings.Ring`."""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import ShapeError, RingMismatchError, UnsupportedRingError
from .rings import Ring, Poly, QQ, ZZ, poly_ring, to_complex


class RingMatrix:
    """Immutable rectangular matrix with all entries in ``ring``.

    ``@`` is the matrix product, ``*`` with a scalar scales.  Block views are
    taken with ``M[r0:r1, c0:c1]``.
    """

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, data: Iterable[Iterable], _trusted: bool = False):
        if _trusted:
            rows = [tuple(r) for r in data]
        else:
            rows = [tuple(ring.convert(x) for x in r) for r in data]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged matrix rows")
        self.ring = ring
        self.rows = len(rows)
        self.cols = ncols
        self.data = tuple(rows)

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, ring: Ring, n: int) -> "RingMatrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], _trusted=True)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int | None = None) -> "RingMatrix":
        z = ring.zero()
        cols = rows if cols is None else cols
        return cls(ring, [[z] * cols for _ in range(rows)], _trusted=True)

    @classmethod
    def diag(cls, ring: Ring, values: Sequence) -> "RingMatrix":
        n = len(values)
        z = ring.zero()
        return cls(ring, [[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RingMatrix"]]) -> "RingMatrix":
        ring = blocks[0][0].ring
        out = []
        for brow in blocks:
            h = brow[0].rows
            for b in brow:
                if b.ring != ring:
                    raise RingMismatchError("blocks over different rings")
                if b.rows != h:
                    raise ShapeError("block row heights differ")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.data[i])
                out.append(row)
        return cls(ring, out, _trusted=True)

    @classmethod
    def column(cls, ring: Ring, values: Sequence) -> "RingMatrix":
        return cls(ring, [[v] for v in values])

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        if isinstance(idx, tuple) and all(isinstance(i, int) for i in idx):
            i, j = idx
            return self.data[i][j]
        if isinstance(idx, tuple):
            ri, ci = idx
            rows = self.data[ri] if isinstance(ri, slice) else (self.data[ri],)
            return RingMatrix(self.ring, [r[ci] if isinstance(ci, slice) else (r[ci],) for r in rows],
                              _trusted=True)
        return self.data[idx]

    def entries(self):
        for r in self.data:
            yield from r

    def column_values(self, j: int = 0) -> list:
        return [r[j] for r in self.data]

    def to_lists(self) -> list:
        return [list(r) for r in self.data]

    def to_numpy(self) -> np.ndarray:
        return np.array([[to_complex(x) for x in r] for r in self.data], dtype=complex).reshape(
            self.rows, self.cols)

    def map(self, fn: Callable, ring: Ring | None = None) -> "RingMatrix":
        ring = self.ring if ring is None else ring
        return RingMatrix(ring, [[fn(x) for x in r] for r in self.data])

    def convert(self, ring: Ring) -> "RingMatrix":
        return RingMatrix(ring, self.data)

    @property
    def T(self) -> "RingMatrix":
        return RingMatrix(self.ring, list(zip(*self.data)) if self.data else [], _trusted=True)

    def permute(self, order: Sequence[int]) -> "RingMatrix":
        """Simultaneous row/column permutation ``M[order][:, order]``."""
        return RingMatrix(self.ring, [[self.data[i][j] for j in order] for i in order], _trusted=True)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "RingMatrix"):
        if not isinstance(other, RingMatrix):
            raise TypeError("expected RingMatrix")
        if other.ring != self.ring:
            raise RingMismatchError(f"matrices over {self.ring!r} and {other.ring!r}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RingMatrix(self.ring, [[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
                          _trusted=True)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return RingMatrix(self.ring, [[x - y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
                          _trusted=True)

    def __neg__(self):
        return RingMatrix(self.ring, [[-x for x in r] for r in self.data], _trusted=True)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        cols = list(zip(*other.data)) if other.data else [() for _ in range(other.cols)]
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = zero
                for x, y in zip(r, c):
                    if x != 0 and y != 0:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return RingMatrix(self.ring, out, _trusted=True)

    def scale(self, c) -> "RingMatrix":
        c = self.ring.convert(c)
        return RingMatrix(self.ring, [[c * x for x in r] for r in self.data], _trusted=True)

    def __mul__(self, c):
        if isinstance(c, RingMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingMatrix":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        out = RingMatrix.identity(self.ring, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_scalar_identity(self, c) -> bool:
        """True iff the matrix equals ``c * I``."""
        if not self.is_square():
            return False
        c = self.ring.convert(c)
        for i, r in enumerate(self.data):
            for j, x in enumerate(r):
                if x != (c if i == j else 0):
                    return False
        return True

    def trace(self):
        acc = self.ring.zero()
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.to_numpy()))

    # -- polynomial evaluation -------------------------------------------
    def apply_poly(self, a: Poly) -> "RingMatrix":
        """``a(X)`` by Horner's rule; coefficients are coerced into ``self.ring``."""
        if not self.is_square():
            raise ShapeError("polynomial of a non-square matrix")
        n = self.rows
        coeffs = [self.ring.convert(c) for c in a.coeffs]
        if not coeffs:
            return RingMatrix.zeros(self.ring, n)
        acc = RingMatrix.identity(self.ring, n).scale(coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = (acc @ self) + RingMatrix.identity(self.ring, n).scale(c)
        return acc

    # -- determinants -----------------------------------------------------
    def det(self, method: str = "berkowitz"):
        return det(self, method)

    def charpoly(self, var: str = "x") -> Poly:
        return charpoly(self, var)

    def __repr__(self):
        return f"RingMatrix({self.ring!r}, {self.to_lists()!r})"

    def __str__(self):
        cells = [[str(x) for x in r] for r in self.data]
        if not cells:
            return "[]"
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _berkowitz_vector(M: RingMatrix) -> list:
    """Coefficients of det(xI - M), descending from the leading 1."""
    ring = M.ring
    one = ring.one()
    n = M.rows
    d = M.data
    if n == 0:
        return [one]
    vec = [one, -d[0][0]]
    for k in range(1, n):
        # t = (1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C) with A the leading k x k block
        row = d[k][:k]
        col = [d[i][k] for i in range(k)]
        t = [one, -d[k][k]]
        x = col
        for j in range(k):
            acc = ring.zero()
            for r, c in zip(row, x):
                if r != 0 and c != 0:
                    acc = acc + r * c
            t.append(-acc)
            if j < k - 1:
                nx = []
                for i in range(k):
                    acc = ring.zero()
                    for aij, xj in zip(d[i][:k], x):
                        if aij != 0 and xj != 0:
                            acc = acc + aij * xj
                    nx.append(acc)
                x = nx
        new = []
        for i in range(k + 2):
            acc = ring.zero()
            for j in range(max(0, i - len(t) + 1), min(i, k) + 1):
                tv = t[i - j]
                if tv != 0 and vec[j] != 0:
                    acc = acc + tv * vec[j]
            new.append(acc)
        vec = new
    return vec


def _bareiss_det(M: RingMatrix):
    ring = M.ring
    n = M.rows
    a = [list(r) for r in M.data]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = ring.exquo(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    out = a[n - 1][n - 1] if n else ring.one()
    return out if sign > 0 else -out


def det(M: RingMatrix, method: str = "berkowitz"):
    """Determinant.  ``berkowitz`` is division free and works over any commutative
    ring; ``bareiss`` needs exact division (integral domains)."""
    if not M.is_square():
        raise ShapeError(f"determinant of a {M.rows}x{M.cols} matrix")
    if method == "berkowitz":
        v = _berkowitz_vector(M)
        return v[-1] if M.rows % 2 == 0 else -v[-1]
    if method == "bareiss":
        return _bareiss_det(M)
    raise ValueError(f"unknown determinant method {method!r}")


def charpoly(M: RingMatrix, var: str = "x") -> Poly:
    """``det(x I - M)`` as a polynomial over ``M.ring``."""
    if not M.is_square():
        raise ShapeError("characteristic polynomial of a non-square matrix")
    v = _berkowitz_vector(M)
    return Poly(poly_ring(M.ring, var), list(reversed(v)), _trusted=True)


def leading_minors(M: RingMatrix, upto: int | None = None) -> list:
    """``[det(M[:k,:k]) for k = 1..upto]``."""
    upto = M.rows if upto is None else upto
    return [det(M[:k, :k]) for k in range(1, upto + 1)]


def _field_for(ring: Ring) -> Ring:
    if ring == ZZ:
        return QQ
    if ring.exact and ring.is_field:
        return ring
    raise UnsupportedRingError(f"exact field arithmetic not available over {ring!r}")


def minimal_polynomial(X: RingMatrix, var: str = "x") -> Poly:
    """Monic annihilating polynomial of least degree.

    Vectorised powers ``I, X, X^2, ...`` are reduced against an echelon basis
    until the first linear dependence appears.  Integer matrices are handled
    over the rationals.
    """
    if not X.is_square():
        raise ShapeError("minimal polynomial of a non-square matrix")
    field = _field_for(X.ring)
    X = X.convert(field) if X.ring != field else X
    n = X.rows
    zero, one = field.zero(), field.one()
    basis = []  # (pivot, vector, combination)
    power = RingMatrix.identity(field, n)
    for k in range(n + 1):
        vec = list(power.entries())
        combo = [zero] * k + [one]
        for piv, bvec, bcombo in basis:
            c = vec[piv]
            if c == 0:
                continue
            f = field.exquo(c, bvec[piv])
            vec = [v - f * b for v, b in zip(vec, bvec)]
            combo = [u - f * (bcombo[i] if i < len(bcombo) else zero) for i, u in enumerate(combo)]
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            return Poly(poly_ring(field, var), combo)
        basis.append((piv, vec, combo))
        power = power @ X
    raise AssertionError("no dependence among n+1 powers")  # Cayley-Hamilton forbids this


def rref(M: RingMatrix):
    """Reduced row echelon form over a field; returns (R, pivot_columns)."""
    field = _field_for(M.ring)
    a = [[field.convert(x) for x in r] for r in M.data]
    nrows, ncols = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = field.exquo(1, a[r][c])
        a[r] = [inv * x for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RingMatrix(field, a, _trusted=True), pivots


def rank(M: RingMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: RingMatrix) -> list:
    """Basis of the right kernel over a field, as column matrices."""
    R, pivots = rref(M)
    field = R.ring
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero()] * M.cols
        v[f] = field.one()
        for i, p in enumerate(pivots):
            v[p] = -R.data[i][f]
        basis.append(RingMatrix.column(field, v))
    return basis
