"""Elements of the rational function field Q(x), places, valuations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..errors import (
    DivisionByZero,
    NotIrreducible,
    PoleAtPoint,
    ZeroDenominator,
)
from .poly import INF, ONE, Infinity, Poly, Scalar, X, as_rational


def _exact(a: Poly, b: Poly) -> Poly:
    q = a.exact_quotient(b)
    if q is None:  # pragma: no cover - callers only divide by known factors
        raise ArithmeticError("expected exact polynomial division")
    return q


class RatFunc:
    """A reduced fraction ``num/den`` of polynomials with ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Union[Poly, Scalar] = 0, den: Union[Poly, Scalar] = 1):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = den if isinstance(den, Poly) else Poly.const(den)
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        if num.is_zero():
            self._set(num, ONE)
            return
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num, den = _exact(num, g), _exact(den, g)
        self._normalize(num, den)

    def _normalize(self, num: Poly, den: Poly):
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self._set(num, den)

    def _set(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RatFunc":
        # num/den already coprime; only the monic scaling remains
        r = cls.__new__(cls)
        if num.is_zero():
            r._set(num, ONE)
        else:
            r._normalize(num, den)
        return r

    @classmethod
    def x(cls) -> "RatFunc":
        return cls._reduced(X, ONE)

    @classmethod
    def coerce(cls, v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, Poly):
            return cls._reduced(v, ONE)
        if isinstance(v, (int, Fraction)):
            return cls._reduced(Poly.const(v), ONE)
        raise TypeError(f"cannot interpret {v!r} as a rational function")

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one() and d.is_one():
            return RatFunc._reduced(a + c, ONE)
        if b == d:
            num = a + c
            g = num.gcd(b) if not num.is_zero() else b
            if g.is_one():
                return RatFunc._reduced(num, b)
            return RatFunc._reduced(_exact(num, g), _exact(b, g))
        g = b.gcd(d)
        if g.is_one():
            return RatFunc._reduced(a * d + c * b, b * d)
        b1, d1 = _exact(b, g), _exact(d, g)
        num = a * d1 + c * b1
        den = b1 * d
        if num.is_zero():
            return RatFunc()
        h = num.gcd(g)
        if not h.is_one():
            num, den = _exact(num, h), _exact(den, h)
        return RatFunc._reduced(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._reduced(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc()
            return RatFunc._reduced(self.num * other, self.den)
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc()
        if not d.is_one():
            g1 = a.gcd(d)
            if not g1.is_one():
                a, d = _exact(a, g1), _exact(d, g1)
        if not b.is_one():
            g2 = c.gcd(b)
            if not g2.is_one():
                c, b = _exact(c, g2), _exact(b, g2)
        return RatFunc._reduced(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc._reduced(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer exponent required")
        if n < 0:
            return self.inverse() ** (-n)
        # powers of a reduced fraction stay reduced
        return RatFunc._reduced(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- evaluation ---------------------------------------------------------

    def __call__(self, at: Scalar) -> Fraction:
        return eval_at(self, at)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num.terms()) > 1:
            n = f"({n})"
        if len(self.den.terms()) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def ratfunc_make(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def ratfunc_arith(op: str, f: RatFunc, g: RatFunc) -> RatFunc:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        if g.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def eval_at(f: RatFunc, c: Scalar) -> Fraction:
    c = as_rational(c)
    d = f.den(c)
    if d == 0:
        raise PoleAtPoint(f"{f} has a pole at {c}")
    return f.num(c) / d


# -- places -------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of ``p`` (rational-root test), ascending."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    k, p = p.shift_down()
    roots = {Fraction(0)} if k else set()
    _, c = p.primitive()
    if len(c) > 1:
        for num in _divisors(c[0]):
            for den in _divisors(c[-1]):
                for s in (num, -num):
                    r = Fraction(s, den)
                    if p(r) == 0:
                        roots.add(r)
    return sorted(roots)


def is_irreducible_small(p: Poly) -> bool:
    """Irreducibility over Q for degree <= 3 (no rational root)."""
    if p.is_constant() or p.degree > 3:
        raise ValueError("certification only covers degrees 1..3")
    return p.degree == 1 or not rational_roots(p)


@dataclass(frozen=True)
class Place:
    """A place of Q(x): a monic irreducible polynomial, or infinity (``poly is None``)."""

    poly: Poly | None = None
    asserted: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.poly is None:
            return
        p = self.poly
        if p.is_constant():
            raise NotIrreducible("a finite place needs a nonconstant polynomial")
        if p.lc != 1:
            raise NotIrreducible("place polynomials must be monic")
        if p.degree <= 3:
            if not is_irreducible_small(p):
                raise NotIrreducible(f"{p} has a rational root")
            object.__setattr__(self, "asserted", False)
        elif not self.asserted:
            raise NotIrreducible(
                f"degree {p.degree} place requires asserted=True (irreducibility not certified)"
            )

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, poly: Poly, asserted: bool = False) -> "Place":
        return cls(poly, asserted)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self):
        return "inf" if self.poly is None else f"({self.poly})"


PLACE_AT_ZERO = Place(X)
PLACE_AT_INFINITY = Place(None)


def _multiplicity(p: Poly, q: Poly) -> int:
    if q == X:
        return p.shift_down()[0]
    k = 0
    while True:
        nxt = p.exact_quotient(q)
        if nxt is None:
            return k
        p = nxt
        k += 1


def ord_at_place(f: RatFunc, q: Place) -> Union[int, Infinity]:
    """Normalized valuation of ``f`` at ``q``; ``INF`` for ``f == 0``."""
    if f.is_zero():
        return INF
    if q.is_infinity:
        return f.den.degree - f.num.degree
    # f is reduced, so at most one of these is nonzero
    m = _multiplicity(f.num, q.poly)
    if m:
        return m
    return -_multiplicity(f.den, q.poly)
