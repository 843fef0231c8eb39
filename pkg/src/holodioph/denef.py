"""The sequence x * x_n / y_n = alpha_n / beta_n and checks of its properties.

For every nonzero n the value of x * x_n / y_n at x = 0 is n, which is what
lets a Diophantine condition on (alpha_n, beta_n) pin down an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Optional

from .arith import INF, PLACE_AT_ZERO, Infinity, Poly, RatFunc, ord_at_place
from .curve import TwistedCurve
from .errors import NotCoprimeInput, RatioMismatch, TorsionEncountered, ZeroN
from .rings import HolomorphyRing, NotCoprime, coprime_in_ring, ring_contains, unit_in_ring


@dataclass(frozen=True)
class DenefTerm:
    n: int
    x_n: RatFunc
    y_n: RatFunc
    alpha_n: Poly
    beta_n: Poly

    @property
    def ratio(self) -> RatFunc:
        return RatFunc(self.alpha_n, self.beta_n)


@dataclass(frozen=True)
class VerificationReport:
    n: int
    ord_value: int | Infinity
    quotient_w: RatFunc
    beta_at_zero: Fraction
    unit_epsilon: Optional[RatFunc]
    passed: bool

    def row(self) -> dict:
        return {
            "n": self.n,
            "ord": "inf" if self.ord_value == INF else int(self.ord_value),
            "w_is_poly": self.quotient_w.is_poly(),
            "beta_at_zero": str(self.beta_at_zero),
            "passed": self.passed,
        }


def _require_local_at_x(ring: HolomorphyRing):
    if ring.prime != PLACE_AT_ZERO:
        raise ValueError("the distinguished prime must be (x)")


def _split(r: RatFunc) -> tuple[Poly, Poly]:
    # canonical form already gives coprime parts with a monic denominator
    return r.num, r.den


@lru_cache(maxsize=128)
def denef_term(E: TwistedCurve, n: int) -> DenefTerm:
    if n == 0:
        raise ZeroN("n must be nonzero")
    pt = E.multiple(n)
    if pt.is_infinity or pt.Y.is_zero():
        raise TorsionEncountered(f"[{n}]P is a torsion point")
    alpha, beta = _split(RatFunc.x() * pt.X / pt.Y)
    return DenefTerm(n, pt.X, pt.Y, alpha, beta)


def verify_order_lemma(term: DenefTerm) -> VerificationReport:
    """ord_(x)(x * x_n / y_n - n) >= 1, recomputed from the coordinates."""
    n = term.n
    r = RatFunc.x() * term.x_n / term.y_n
    ord_value = ord_at_place(r - n, PLACE_AT_ZERO)
    alpha, beta = _split(r)
    w = RatFunc(alpha - beta * n, Poly.x())
    b0 = beta.coeff(0)
    passed = ord_value >= 1 and w.is_poly() and b0 != 0
    return VerificationReport(n, ord_value, w, b0, None, passed)


def verify_coprime_form(
    ring: HolomorphyRing, term: DenefTerm, a: RatFunc, b: RatFunc
) -> VerificationReport:
    """Check a coprime pair (a, b) of the ring with a/b = x x_n / y_n.

    Then a = eps * alpha_n for a unit eps, a - n b = x w with w in the ring,
    and b is a unit at (x).
    """
    _require_local_at_x(ring)
    cert = coprime_in_ring(ring, a, b)
    if isinstance(cert, NotCoprime):
        raise NotCoprimeInput(f"a and b share a zero at {cert.place}")
    x = RatFunc.x()
    n = term.n
    if b.is_zero() or a * term.y_n != b * x * term.x_n:
        raise RatioMismatch(f"a/b differs from x*x_{n}/y_{n}")
    eps = a / RatFunc(term.alpha_n)
    w = (a - b * n) / x
    ord_value = ord_at_place(a / b - n, PLACE_AT_ZERO)
    b0 = b(0) if ord_at_place(b, PLACE_AT_ZERO) >= 0 else Fraction(0)
    passed = (
        ord_value >= 1
        and unit_in_ring(ring, eps)
        and ring_contains(ring, w)
        and ord_at_place(b, PLACE_AT_ZERO) == 0
    )
    return VerificationReport(n, ord_value, w, Fraction(b0), eps, passed)


@dataclass(frozen=True)
class CoprimeFacts:
    n: int
    coprime: bool
    x_divides: bool
    beta_at_zero: Fraction
    alpha_at_zero: Fraction

    @property
    def passed(self) -> bool:
        return (
            self.coprime
            and self.x_divides
            and self.beta_at_zero != 0
            and self.alpha_at_zero == self.n * self.beta_at_zero
        )


def coprime_facts(term: DenefTerm) -> CoprimeFacts:
    """gcd(alpha, beta) = 1, x | alpha - n beta, beta(0) != 0, alpha(0) = n beta(0)."""
    a, b, n = term.alpha_n, term.beta_n, term.n
    return CoprimeFacts(
        n,
        a.gcd(b).is_one(),
        (a - b * n).coeff(0) == 0,
        b.coeff(0),
        a.coeff(0),
    )


def sweep(E: TwistedCurve, ns: Iterable[int]) -> list[tuple[DenefTerm, VerificationReport, CoprimeFacts]]:
    out = []
    for n in ns:
        term = denef_term(E, n)
        out.append((term, verify_order_lemma(term), coprime_facts(term)))
    return out


def congruence_pins_n(term: DenefTerm, c: RatFunc) -> tuple[bool, bool]:
    """For c regular at (x): (ord(alpha - beta c) >= 1, ord(c - n) >= 1).

    Whenever the first holds the second must too, since beta is a unit at (x).
    """
    if ord_at_place(c, PLACE_AT_ZERO) < 0:
        raise ValueError("c must be regular at (x)")
    lhs = ord_at_place(RatFunc(term.alpha_n) - RatFunc(term.beta_n) * c, PLACE_AT_ZERO) >= 1
    rhs = ord_at_place(c - term.n, PLACE_AT_ZERO) >= 1
    return lhs, rhs
