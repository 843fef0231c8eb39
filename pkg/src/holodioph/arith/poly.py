"""Univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd as _igcd, lcm as _ilcm
from numbers import Rational
from typing import Iterable, Mapping, Union

from . import _intpoly as ip
from ..errors import BothZero, DivisionByZero

Scalar = Union[int, Fraction]


@total_ordering
class Infinity:
    """Signed infinity used for the degree of 0 and for valuations of 0.

    Compares against ints; ``-INF`` is ``NEG_INF``.  Kept apart from
    ``float('inf')`` so no float ever enters exact code paths.
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __neg__(self) -> "Infinity":
        return NEG_INF if self.sign > 0 else INF

    def __eq__(self, other):
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("Infinity", self.sign))

    def __add__(self, other):
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf is undefined")
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self):
        return "+inf" if self.sign > 0 else "-inf"


INF = Infinity(1)
NEG_INF = Infinity(-1)


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.strip())
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """A polynomial in ``x`` with rational coefficients.

    Stored as integer coefficients ``c`` over a positive common denominator
    ``d`` with ``gcd(content(c), d) == 1``, which makes the representation
    canonical.  ``terms()`` gives the sparse degree -> coefficient view.
    """

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Scalar], Iterable[Scalar], None] = None):
        if coeffs is None:
            dense: list[Fraction] = []
        elif isinstance(coeffs, Mapping):
            if any(not isinstance(e, int) or e < 0 for e in coeffs):
                raise ValueError("exponents must be nonnegative integers")
            top = max(coeffs, default=-1)
            dense = [Fraction(0)] * (top + 1)
            for e, v in coeffs.items():
                dense[e] = as_rational(v)
        else:
            dense = [as_rational(v) for v in coeffs]
        d = 1
        for v in dense:
            d = _ilcm(d, v.denominator)
        c = ip.strip([v.numerator * (d // v.denominator) for v in dense])
        self._set(c, d)

    def _set(self, c, d):
        if not c:
            d = 1
        else:
            g = _igcd(ip.content(c), d)
            if g != 1:
                c = tuple(v // g for v in c)
                d //= g
        self._c = c
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, c, d: int = 1) -> "Poly":
        p = cls.__new__(cls)
        if d < 0:
            c, d = tuple(-v for v in c), -d
        p._set(ip.strip(c), d)
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = as_rational(c)
        return cls._raw((c.numerator,), c.denominator)

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, deg: int, c: Scalar = 1) -> "Poly":
        c = as_rational(c)
        return cls._raw((0,) * deg + (c.numerator,), c.denominator)

    # -- inspection ---------------------------------------------------------

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_one(self) -> bool:
        return self._c == (1,) and self._d == 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    @property
    def lc(self) -> Fraction:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def terms(self) -> dict[int, Fraction]:
        return {i: Fraction(v, self._d) for i, v in enumerate(self._c) if v}

    def coefficients(self) -> list[Fraction]:
        return [Fraction(v, self._d) for v in self._c]

    def int_parts(self) -> tuple[tuple, int]:
        """(integer coefficients, common denominator) of the canonical form."""
        return self._c, self._d

    def primitive(self) -> tuple[Fraction, tuple]:
        """Split into a rational content and a primitive integer polynomial with lc > 0."""
        g, pp = ip.primitive(self._c)
        return Fraction(g, self._d), pp

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _ilcm(self._d, other._d)
        return Poly._raw(ip.add(ip.scale(self._c, d // self._d), ip.scale(other._c, d // other._d)), d)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-v for v in self._c), self._d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_rational(other)
            return Poly._raw(ip.scale(self._c, other.numerator), self._d * other.denominator)
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._raw(ip.mul(self._c, other._c), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._c, self._d))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __call__(self, at: Scalar) -> Fraction:
        at = as_rational(at)
        num, den = ip.evaluate(self._c, at.numerator, at.denominator)
        return Fraction(num, den * self._d)

    def monic(self) -> "Poly":
        if not self._c:
            return self
        return Poly._raw(self._c, self._c[-1])

    def derivative(self) -> "Poly":
        return Poly._raw(tuple(i * v for i, v in enumerate(self._c))[1:], self._d)

    def reversed(self, n: int) -> "Poly":
        """``x**n * self(1/x)``; requires ``n >= deg``."""
        if self._c and n < len(self._c) - 1:
            raise ValueError("reversal degree below polynomial degree")
        padded = self._c + (0,) * (n + 1 - len(self._c))
        return Poly._raw(tuple(reversed(padded)), self._d)

    def shift_down(self) -> tuple[int, "Poly"]:
        """Largest ``k`` with ``x**k | self``, and ``self / x**k``; zero gives (0, 0)."""
        k = 0
        while k < len(self._c) and not self._c[k]:
            k += 1
        if k == 0 or not self._c:
            return 0, self
        return k, Poly._raw(self._c[k:], self._d)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        r = self.coefficients()
        g = other.coefficients()
        lc = g[-1]
        m = len(g) - 1
        q = [Fraction(0)] * (len(r) - m)
        for i in range(len(r) - 1, m - 1, -1):
            t = r[i] / lc
            if t:
                q[i - m] = t
                for j in range(m + 1):
                    r[i - m + j] -= t * g[j]
        return Poly(q), Poly(r[:m])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_quotient(self, other: "Poly") -> "Poly | None":
        """``self / other`` when ``other`` divides ``self`` over the rationals, else None."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if not self._c:
            return self
        gs, ps = ip.primitive(self._c)
        go, po = ip.primitive(other._c)
        q = ip.divexact(ps, po)
        if q is None:
            return None
        # (gs/ds) ps / ((go/do) po) = (gs*do)/(ds*go) * q
        return Poly._raw(ip.scale(q, gs * other._d), self._d * go)

    def divides(self, other: "Poly") -> bool:
        return other.exact_quotient(self) is not None

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (fast heuristic route, verified)."""
        if self.is_zero() and other.is_zero():
            raise BothZero("gcd(0, 0) is undefined")
        g = ip.heuristic_gcd(ip.primitive(self._c)[1], ip.primitive(other._c)[1])
        return Poly._raw(g, g[-1])

    def __repr__(self):
        return f"Poly({self.terms()!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            v = self._c[i]
            if not v:
                continue
            c = Fraction(v, self._d)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a}*{mono}"
                else:
                    body = f"({a})*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = Poly.x()
ONE = Poly.const(1)
ZERO = Poly()
