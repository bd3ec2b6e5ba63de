"""Quadratic number fields ``Q(sqrt d)`` for exact rank computations at surd eigenvalues."""
from __future__ import annotations

import cmath
import math
import numbers
from fractions import Fraction
from functools import lru_cache

from ..errors import RingMismatchError
from .rings import Ring, _fmt_q, _q


class QuadraticSurd:
    """``re + im * sqrt(d)`` with rational ``re``, ``im``."""

    __slots__ = ("d", "re", "im")

    def __init__(self, d: int, re=0, im=0):
        self.d = d
        self.re = _q(re)
        self.im = _q(im)

    def _lift(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise RingMismatchError("surds from different quadratic fields")
            return other
        if isinstance(other, (numbers.Integral, Fraction)):
            return QuadraticSurd(self.d, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.d, self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(self.d, -self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.d, self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.d, self.re * o.re + self.d * self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self):
        return _q(Fraction(self.re) ** 2 - self.d * Fraction(self.im) ** 2)

    def conjugate(self):
        return QuadraticSurd(self.d, self.re, -self.im)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        num = self * o.conjugate()
        return QuadraticSurd(self.d, Fraction(num.re) / nrm, Fraction(num.im) / nrm)

    def __rtruediv__(self, other):
        return QuadraticSurd(self.d, other, 0) / self

    def __pow__(self, k: int):
        out = QuadraticSurd(self.d, 1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return self.d == other.d and self.re == other.re and self.im == other.im
        if isinstance(other, (numbers.Integral, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(self.re) + complex(self.im) * cmath.sqrt(self.d)

    def __repr__(self):
        return f"QuadraticSurd({self.d}, {self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return _fmt_q(self.re)
        surd = f"{_fmt_q(self.im)}*sqrt({self.d})"
        return surd if not self.re else f"{_fmt_q(self.re)} + {surd}"


class QuadraticField(Ring):
    is_field = True

    def __init__(self, d: int):
        d = int(d)
        if d >= 0 and math.isqrt(d) ** 2 == d:
            raise ValueError(f"{d} is a perfect square")
        self.d = d
        self.name = f"QQ(sqrt({d}))"

    def key(self):
        return ("quadratic", self.d)

    def gen(self) -> QuadraticSurd:
        return QuadraticSurd(self.d, 0, 1)

    def convert(self, x):
        if isinstance(x, QuadraticSurd):
            if x.d != self.d:
                raise RingMismatchError(f"cannot convert {x!r} to {self!r}")
            return x
        if isinstance(x, (numbers.Integral, Fraction)):
            return QuadraticSurd(self.d, x, 0)
        im = getattr(x, "im", None)
        if im == 0:
            return QuadraticSurd(self.d, x.re, 0)
        raise RingMismatchError(f"cannot convert {x!r} to {self!r}")

    def exquo(self, x, y):
        return self.convert(x) / self.convert(y)


@lru_cache(maxsize=None)
def quadratic_field(d: int) -> QuadraticField:
    return QuadraticField(d)
