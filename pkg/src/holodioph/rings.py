"""Holomorphy rings of Q(x), their prime ideals, units and coprimality.

A ring is given by the set W of places allowed in denominators together
with a distinguished prime p outside W.  Membership only ever divides by
places that are named explicitly, so nothing here factors polynomials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal, Union

from .arith import (
    PLACE_AT_INFINITY,
    PLACE_AT_ZERO,
    Place,
    Poly,
    RatFunc,
    ord_at_place,
    poly_gcd_bezout,
    rational_roots,
)
from .arith.text import parse_ratfunc, poly_from_obj, poly_to_text
from .errors import (
    InvalidPlaceSet,
    NotInRing,
    ParseError,
    PoleAtPrime,
    UnsupportedRing,
)


@dataclass(frozen=True)
class PlaceSet:
    """Either an explicit finite list of places or "everything except" a list."""

    mode: Literal["finite", "cofinite"]
    places: tuple[Place, ...]

    def __post_init__(self):
        if self.mode not in ("finite", "cofinite"):
            raise InvalidPlaceSet(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "places", tuple(self.places))
        if not self.places:
            raise InvalidPlaceSet(
                "W must be nonempty" if self.mode == "finite" else "W must not be every place"
            )
        if len(set(self.places)) != len(self.places):
            raise InvalidPlaceSet("places must be pairwise distinct")

    def __contains__(self, q: Place) -> bool:
        listed = q in self.places
        return listed if self.mode == "finite" else not listed

    @property
    def allows_infinity(self) -> bool:
        return PLACE_AT_INFINITY in self

    def finite_places(self) -> list[Place]:
        return [q for q in self.places if not q.is_infinity]


@dataclass(frozen=True)
class HolomorphyRing:
    """O_{K,W} = {h : ord_q h >= 0 for all q not in W}, with a prime p not in W."""

    allowed_poles: PlaceSet
    prime: Place

    def __post_init__(self):
        if self.prime in self.allowed_poles:
            raise InvalidPlaceSet(f"distinguished prime {self.prime} lies in W")

    @classmethod
    def local_at_zero(cls) -> "HolomorphyRing":
        """Every place except (x) may appear as a pole; p = (x)."""
        return cls(PlaceSet("cofinite", (PLACE_AT_ZERO,)), PLACE_AT_ZERO)

    @classmethod
    def polynomial_ring(cls) -> "HolomorphyRing":
        """Q[x]: only infinity may be a pole; p = (x)."""
        return cls(PlaceSet("finite", (PLACE_AT_INFINITY,)), PLACE_AT_ZERO)

    def __str__(self):
        names = ", ".join(str(q) for q in self.allowed_poles.places)
        if self.allowed_poles.mode == "finite":
            return f"O[W={{{names}}}], p={self.prime}"
        return f"O[W=all but {{{names}}}], p={self.prime}"


@dataclass(frozen=True)
class CoprimalityCertificate:
    A: RatFunc
    B: RatFunc

    def certifies(self, a: RatFunc, b: RatFunc) -> bool:
        return self.A * a + self.B * b == RatFunc(1)


@dataclass(frozen=True)
class NotCoprime:
    """A common zero outside W.  ``place`` is None when the shared factor
    has degree above 3 and could not be split without factorization;
    ``common_factor`` then carries it."""

    place: Place | None
    common_factor: Poly | None = None


def _strip_places(p: Poly, places) -> Poly:
    for q in places:
        while True:
            nxt = p.exact_quotient(q.poly)
            if nxt is None:
                break
            p = nxt
    return p


def ring_contains(ring: HolomorphyRing, f: RatFunc) -> bool:
    if f.is_zero():
        return True
    W = ring.allowed_poles
    if W.mode == "cofinite":
        return all(ord_at_place(f, q) >= 0 for q in W.places)
    if not W.allows_infinity and ord_at_place(f, PLACE_AT_INFINITY) < 0:
        return False
    return _strip_places(f.den, W.finite_places()).is_constant()


def ideal_contains(ring: HolomorphyRing, f: RatFunc) -> bool:
    return ring_contains(ring, f) and ord_at_place(f, ring.prime) >= 1


def unit_in_ring(ring: HolomorphyRing, u: RatFunc) -> bool:
    if u.is_zero():
        return False
    return ring_contains(ring, u) and ring_contains(ring, u.inverse())


def _witness_place(common: Poly) -> NotCoprime:
    roots = rational_roots(common)
    if roots:
        return NotCoprime(Place(Poly([-roots[0], 1])))
    if common.degree <= 3:
        return NotCoprime(Place(common))
    return NotCoprime(None, common)


def _polynomial_part(f: RatFunc) -> Poly:
    return f.num.divmod(f.den)[0]


def coprime_in_ring(
    ring: HolomorphyRing, a: RatFunc, b: RatFunc
) -> Union[CoprimalityCertificate, NotCoprime]:
    """Certificate (A, B) in the ring with A*a + B*b = 1, or a shared zero outside W."""
    for name, v in (("a", a), ("b", b)):
        if not ring_contains(ring, v):
            raise NotInRing(f"{name} = {v} is not in {ring}")
    if unit_in_ring(ring, a):
        return CoprimalityCertificate(a.inverse(), RatFunc(0))
    if unit_in_ring(ring, b):
        return CoprimalityCertificate(RatFunc(0), b.inverse())

    if a.is_zero() and b.is_zero():
        return NotCoprime(ring.prime)
    W = ring.allowed_poles
    inf_allowed = W.allows_infinity
    if not inf_allowed and (
        ord_at_place(a, PLACE_AT_INFINITY) > 0 and ord_at_place(b, PLACE_AT_INFINITY) > 0
    ):
        return NotCoprime(PLACE_AT_INFINITY)

    g = a.num.gcd(b.num)
    if W.mode == "cofinite":
        for q in W.finite_places():
            if q.poly.divides(g):
                return NotCoprime(q)
    else:
        residual = _strip_places(g, W.finite_places())
        if not residual.is_constant():
            return _witness_place(residual.monic())

    # g is a unit of the ring; lift a polynomial Bezout relation
    _, A0, B0 = poly_gcd_bezout(a.num, b.num)
    A = RatFunc(A0 * a.den, g)
    B = RatFunc(B0 * b.den, g)
    if not inf_allowed:
        # shift by a multiple of (b, -a) to clear the pole at infinity
        if ord_at_place(b, PLACE_AT_INFINITY) == 0:
            k = RatFunc(_polynomial_part(A / b))
            A, B = A - k * b, B + k * a
        else:
            k = RatFunc(_polynomial_part(B / a))
            A, B = A + k * b, B - k * a
    cert = CoprimalityCertificate(A, B)
    assert cert.certifies(a, b) and ring_contains(ring, A) and ring_contains(ring, B)
    return cert


def ideal_generators(ring: HolomorphyRing) -> list[RatFunc]:
    """A finite generating set of the prime ideal I_p of the ring."""
    p = ring.prime
    W = ring.allowed_poles
    if p.is_infinity:
        # 1/w for any allowed linear place w
        for w in _allowed_places_of_degree(W, 1):
            return [RatFunc(Poly.const(1), w.poly)]
        raise UnsupportedRing("no allowed degree-one place to build generators of I_inf")
    if W.allows_infinity:
        return [RatFunc(p.poly)]
    for w in _allowed_places_of_degree(W, p.degree):
        return [RatFunc(p.poly, w.poly)]
    raise UnsupportedRing(f"no allowed place of degree {p.degree} to build generators of I_p")


def _allowed_places_of_degree(W: PlaceSet, d: int):
    if W.mode == "finite":
        yield from (q for q in W.finite_places() if q.degree == d)
        return
    # cofinite: only finitely many places are excluded, so a short search
    # over x - c or x^d + c (certified irreducible for d <= 3) succeeds
    if d > 3:
        return
    for c in range(1, 10_000):
        for cand in (c, -c):
            poly = Poly([-cand, 1]) if d == 1 else Poly.monomial(d) + cand
            if d > 1 and rational_roots(poly):
                continue
            q = Place(poly)
            if q in W:
                yield q


def residue(ring: HolomorphyRing, f: RatFunc) -> Poly:
    """Image of ``f`` in the residue field at p, as a polynomial of degree < deg p."""
    p = ring.prime
    if ord_at_place(f, p) < 0:
        raise PoleAtPrime(f"{f} has a pole at {p}")
    if f.is_zero():
        return Poly()
    if p.is_infinity:
        if f.num.degree < f.den.degree:
            return Poly()
        return Poly.const(f.num.lc / f.den.lc)
    q = p.poly
    if q.degree == 1:
        return Poly.const(f(-q.coeff(0)))
    num = f.num.divmod(q)[1]
    g, inv, _ = poly_gcd_bezout(f.den.divmod(q)[1], q)
    # den is prime to q, so g == 1
    return (num * inv).divmod(q)[1]


def reduce_to_integer(ring: HolomorphyRing, f: RatFunc) -> int | None:
    """The integer n with f - n in I_p, or None when f is not in Z + I_p."""
    r = residue(ring, f)
    if not r.is_constant():
        return None
    c = r.coeff(0)
    return c.numerator if c.denominator == 1 else None


# -- descriptor codec -------------------------------------------------------------


def place_to_literal(q: Place) -> str:
    return "inf" if q.is_infinity else poly_to_text(q.poly)


def place_from_literal(lit) -> Place:
    if lit == "inf":
        return PLACE_AT_INFINITY
    if isinstance(lit, list):
        poly = poly_from_obj(lit)
    elif isinstance(lit, str):
        stripped = lit.strip()
        if stripped.startswith("["):
            try:
                poly = poly_from_obj(json.loads(stripped))
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc)) from exc
        else:
            f = parse_ratfunc(stripped)
            if not f.is_poly():
                raise ParseError(f"place literal {lit!r} is not a polynomial")
            poly = f.num
    else:
        raise ParseError(f"bad place literal {lit!r}")
    return Place(poly)


def ring_to_obj(ring: HolomorphyRing) -> dict:
    return {
        "mode": ring.allowed_poles.mode,
        "places": [place_to_literal(q) for q in ring.allowed_poles.places],
        "prime": place_to_literal(ring.prime),
    }


def ring_from_obj(obj) -> HolomorphyRing:
    if not isinstance(obj, dict) or not {"mode", "places", "prime"} <= set(obj):
        raise ParseError("ring descriptor needs mode, places and prime")
    if not isinstance(obj["places"], list):
        raise ParseError("ring places must be a list")
    places = tuple(place_from_literal(lit) for lit in obj["places"])
    return HolomorphyRing(PlaceSet(obj["mode"], places), place_from_literal(obj["prime"]))


__all__ = [
    "PlaceSet",
    "HolomorphyRing",
    "CoprimalityCertificate",
    "NotCoprime",
    "ring_contains",
    "ideal_contains",
    "unit_in_ring",
    "coprime_in_ring",
    "ideal_generators",
    "residue",
    "reduce_to_integer",
    "ring_to_obj",
    "ring_from_obj",
    "place_to_literal",
    "place_from_literal",
]
