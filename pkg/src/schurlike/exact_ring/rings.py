"""Commutative rings and their element types.

Elements of the integer and rational rings are plain Python ``int`` and
:class:`fractions.Fraction` values (a rational that happens to be integral may
be held as an ``int``).  Gaussian rationals, polynomials and rational functions
have dedicated immutable classes.  The approximate complex ring uses Python
``complex`` and is flagged ``exact = False``.
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..errors import RingMismatchError, UnsupportedRingError, PoleError


def _q(x):
    """Normalise a rational scalar: integral values become ``int``."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, numbers.Integral):
        return int(x)
    raise RingMismatchError(f"{x!r} is not a rational number")


def _fmt_q(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


class Ring:
    name = "ring"
    exact = True
    is_field = False

    def key(self):
        return (self.name,)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def convert(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def exquo(self, x, y):
        """Exact quotient ``x / y``; raises :class:`ArithmeticError` if none exists."""
        raise NotImplementedError

    def to_complex(self, x) -> complex:
        return complex(x)


class IntegerRing(Ring):
    name = "ZZ"

    def convert(self, x):
        if isinstance(x, numbers.Integral):
            return int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        if isinstance(x, GaussianRational) and x.im == 0:
            return self.convert(x.re)
        raise RingMismatchError(f"cannot convert {x!r} to ZZ")

    def exquo(self, x, y):
        q, r = divmod(x, y)
        if r:
            raise ArithmeticError(f"{y} does not divide {x} in ZZ")
        return q


class RationalField(Ring):
    name = "QQ"
    is_field = True

    def convert(self, x):
        if isinstance(x, (numbers.Integral, Fraction)):
            return _q(x)
        if isinstance(x, str):
            return _q(Fraction(x))
        if isinstance(x, GaussianRational) and x.im == 0:
            return x.re
        raise RingMismatchError(f"cannot convert {x!r} to QQ")

    def exquo(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return _q(Fraction(x) / y)


class GaussianRationalField(Ring):
    name = "QQI"
    is_field = True

    def convert(self, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (numbers.Integral, Fraction, str)):
            return GaussianRational(RationalField().convert(x), 0)
        raise RingMismatchError(f"cannot convert {x!r} to QQI")

    def exquo(self, x, y):
        return x / y


class ComplexField(Ring):
    """Double-precision complex numbers.  Not exact."""

    name = "CC"
    exact = False
    is_field = True

    def convert(self, x):
        if isinstance(x, (numbers.Number, GaussianRational)):
            return complex(x)
        raise RingMismatchError(f"cannot convert {x!r} to CC")

    def exquo(self, x, y):
        return x / y


ZZ = IntegerRing()
QQ = RationalField()
QQI = GaussianRationalField()
CC = ComplexField()


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (numbers.Integral, Fraction)):
            return GaussianRational(x, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self):
        return _q(self.re * self.re + self.im * self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in QQI")
        num = self * o.conjugate()
        return GaussianRational(Fraction(num.re) / n, Fraction(num.im) / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        out = GaussianRational(1, 0)
        base = self
        if k < 0:
            base, k = GaussianRational(1, 0) / base, -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, complex):
                return False
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussianRational({_fmt_q(self.re)}, {_fmt_q(self.im)})"

    def __str__(self):
        if self.im == 0:
            return _fmt_q(self.re)
        im = _fmt_q(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im}*I"
        return f"({_fmt_q(self.re)}{sign}{im}*I)"


class PolyRing(Ring):
    """Univariate polynomials over ``base`` in the indeterminate ``var``."""

    def __init__(self, base: Ring, var: str = "x"):
        self.base = base
        self.var = var
        self.exact = base.exact
        self.name = f"{base!r}[{var}]"

    def key(self):
        return ("poly", self.base.key(), self.var)

    def __call__(self, coeffs: Iterable) -> "Poly":
        return Poly(self, coeffs)

    def gen(self) -> "Poly":
        return Poly(self, (self.base.zero(), self.base.one()), _trusted=True)

    def convert(self, x):
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            if x.ring.var == self.var:
                return Poly(self, [self.base.convert(c) for c in x.coeffs], _trusted=True)
        return Poly(self, (self.base.convert(x),), _trusted=True)

    def exquo(self, x, y):
        q, r = x._divmod_domain(self.convert(y))
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def to_complex(self, x):
        if x.degree() > 0:
            raise TypeError("non-constant polynomial has no complex value")
        return self.base.to_complex(x.coeffs[0] if x.coeffs else 0)


@lru_cache(maxsize=None)
def poly_ring(base: Ring, var: str = "x") -> PolyRing:
    return PolyRing(base, var)


def _integral(coeffs):
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            d = c.denominator
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [int(c) for c in coeffs], 1
    return [c.numerator * (den // c.denominator) if isinstance(c, Fraction) else c * den
            for c in coeffs], den


def _rational_convolve(a, b) -> list:
    """Product coefficients of two rational coefficient lists.

    Denominators are cleared first so the inner loop runs on ints.
    """
    ia, da = _integral(a)
    ib, db = _integral(b)
    out = [0] * (len(ia) + len(ib) - 1)
    for i, x in enumerate(ia):
        if x:
            for j, y in enumerate(ib):
                out[i + j] += x * y
    den = da * db
    if den == 1:
        return out
    return [_q(Fraction(c, den)) for c in out]


class Poly:
    """Dense polynomial with coefficients ascending, trailing zeros trimmed.

    The zero polynomial has empty ``coeffs`` and degree ``-1``.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: Iterable = (), _trusted: bool = False):
        if not _trusted:
            coeffs = [ring.base.convert(c) for c in coeffs]
        else:
            coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # -- basic queries ----------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.base.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.base.zero()

    def _other(self, other):
        if isinstance(other, Poly) and (other.ring is self.ring or other.ring == self.ring):
            return other
        try:
            return self.ring.convert(other)
        except (RingMismatchError, TypeError):
            return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs], _trusted=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly(self.ring, (), _trusted=True)
        if len(b) == 1:
            c = b[0]
            return Poly(self.ring, [x * c for x in a], _trusted=True)
        if len(a) == 1:
            c = a[0]
            return Poly(self.ring, [c * x for x in b], _trusted=True)
        if self.ring.base.name in ("ZZ", "QQ"):
            return Poly(self.ring, _rational_convolve(a, b), _trusted=True)
        out = [self.ring.base.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            return self.coeffs == other.coeffs
        if isinstance(other, int) and not other:
            return not self.coeffs
        o = self._other(other)
        if o is None:
            return False
        return self.coeffs == o.coeffs

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0]) if self.coeffs else hash(0)
        return hash(self.coeffs)

    # -- division ---------------------------------------------------------
    def _divmod_domain(self, d: "Poly"):
        """Long division dividing leading coefficients exactly in the base ring."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        base = self.ring.base
        rem = list(self.coeffs)
        dc = d.coeffs
        dd = len(dc) - 1
        lcd = dc[-1]
        if len(rem) - 1 < dd:
            return Poly(self.ring, (), _trusted=True), self
        q = [base.zero()] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            t = base.exquo(c, lcd)
            q[k - dd] = t
            for j in range(dd + 1):
                rem[k - dd + j] = rem[k - dd + j] - t * dc[j]
        return Poly(self.ring, q, _trusted=True), Poly(self.ring, rem[:dd] if dd else [], _trusted=True)

    def __divmod__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.ring.base.is_field:
            raise ArithmeticError("divmod needs a coefficient field; use exquo")
        return self._divmod_domain(o)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other):
        return self.ring.exquo(self, other)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        c = self.lc()
        return Poly(self.ring, [self.ring.base.exquo(x, c) for x in self.coeffs], _trusted=True)

    def derivative(self) -> "Poly":
        return Poly(self.ring, [k * c for k, c in enumerate(self.coeffs)][1:], _trusted=True)

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        """Horner evaluation at any ``x`` supporting ``*`` and ``+`` with coefficients."""
        if not self.coeffs:
            return self.ring.base.zero()
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        to_c = self.ring.base.to_complex
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + to_c(c)
        return acc

    def complex_coeffs(self) -> list:
        to_c = self.ring.base.to_complex
        return [to_c(c) for c in self.coeffs]

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"Poly({self.ring!r}, {list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        v = self.ring.var
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            cs = _fmt_q(c) if isinstance(c, (int, Fraction)) else str(c)
            if isinstance(c, Poly) and len([t for t in c.coeffs if t != 0]) > 1:
                cs = f"({cs})"
            mono = "" if k == 0 else (v if k == 1 else f"{v}^{k}")
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a coefficient field (Euclid)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFuncField(Ring):
    """Rational functions over an exact field, stored reduced with monic denominator."""

    is_field = True

    def __init__(self, base: Ring, var: str = "x"):
        if not (base.exact and base.is_field):
            raise UnsupportedRingError("rational functions need an exact coefficient field")
        self.base = base
        self.var = var
        self.poly = poly_ring(base, var)
        self.name = f"{base!r}({var})"

    def key(self):
        return ("ratfunc", self.base.key(), self.var)

    def gen(self) -> "RatFunc":
        return RatFunc(self, self.poly.gen())

    def convert(self, x):
        if isinstance(x, RatFunc):
            if x.ring == self:
                return x
            if x.ring.var == self.var:
                return RatFunc(self, self.poly.convert(x.num), self.poly.convert(x.den))
        if isinstance(x, Poly) and x.ring.var == self.var:
            return RatFunc(self, self.poly.convert(x))
        return RatFunc(self, self.poly.convert(x), _reduced=True)

    def exquo(self, x, y):
        return self.convert(x) / y


@lru_cache(maxsize=None)
def ratfunc_field(base: Ring, var: str = "x") -> RatFuncField:
    return RatFuncField(base, var)


class RatFunc:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: RatFuncField, num: Poly, den: Poly | None = None, _reduced: bool = False):
        P = ring.poly
        num = P.convert(num)
        den = P.one() if den is None else P.convert(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = P.one()
        elif not _reduced and den.degree() > 0:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        c = den.lc()
        if c != 1:
            inv = ring.base.exquo(1, c)
            num = num * inv
            den = den * inv
        self.ring = ring
        self.num = num
        self.den = den

    def _other(self, other):
        if isinstance(other, RatFunc) and other.ring == self.ring:
            return other
        try:
            return self.ring.convert(other)
        except (RingMismatchError, TypeError):
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.ring, self.num + o.num, self.den)
        return RatFunc(self.ring, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ring, -self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFunc(self.ring, self.num * o.num, _reduced=True)
        return RatFunc(self.ring, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.ring, self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.ring, self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def evaluate(self, z: complex, rtol: float = 1e-13) -> complex:
        """Numeric value at ``z``; :class:`PoleError` if ``z`` is (numerically) a pole."""
        d = self.den.eval_complex(z)
        if self.den.degree() > 0:
            scale = sum(abs(c) * abs(z) ** k for k, c in enumerate(self.den.complex_coeffs()))
            if abs(d) <= rtol * max(scale, 1.0):
                raise PoleError(f"{z} is a pole of {self}")
        return self.num.eval_complex(z) / d

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def ring_of(x) -> Ring:
    """Infer the ring of a bare scalar."""
    if isinstance(x, (Poly, RatFunc)):
        return x.ring
    if isinstance(x, GaussianRational):
        return QQI
    if isinstance(x, bool):
        raise UnsupportedRingError("booleans are not ring elements")
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, numbers.Integral):
        return ZZ
    if isinstance(x, numbers.Complex):
        return CC
    raise UnsupportedRingError(f"no ring for {type(x).__name__}")


def common_ring(*xs) -> Ring:
    rings = {ring_of(x) for x in xs}
    if len(rings) != 1:
        raise RingMismatchError(f"operands live in different rings: {sorted(map(repr, rings))}")
    return rings.pop()


def to_complex(x) -> complex:
    if isinstance(x, RatFunc):
        if x.is_polynomial() and x.num.degree() <= 0:
            return x.num.ring.to_complex(x.num) / x.den.ring.to_complex(x.den)
        raise TypeError("non-constant rational function has no complex value")
    if isinstance(x, Poly):
        return x.ring.to_complex(x)
    return complex(x)
