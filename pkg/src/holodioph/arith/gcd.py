"""Polynomial gcds and Bezout cofactors over Q.

Three routes compute the same monic gcd:

* ``Poly.gcd`` - heuristic gcd through big-integer evaluation (default),
* ``subresultant_gcd`` - fraction-free subresultant remainder sequence,
* ``naive_gcd`` - textbook Euclid on rational coefficients (test oracle).
"""

from __future__ import annotations

from ..errors import BothZero
from . import _intpoly as ip
from .poly import Poly


def naive_gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def subresultant_gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    g = ip.subresultant_gcd(a.primitive()[1], b.primitive()[1])
    return Poly._raw(g, g[-1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    return a.gcd(b)


def naive_bezout(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid on rational coefficients: (g, A, B), g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    t0, t1 = Poly(), Poly.const(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_gcd_bezout(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, A, B)`` with ``g`` the monic gcd and ``A*a + B*b == g``.

    When both inputs are nonconstant the cofactors are the minimal ones:
    ``deg A < deg b - deg g`` and ``deg B < deg a - deg g``.
    """
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    g = a.gcd(b)
    a1 = a.exact_quotient(g)
    b1 = b.exact_quotient(g)
    if not a1.is_zero() and a1.is_constant():
        return g, Poly.const(1 / a1.coeff(0)), Poly()
    if not b1.is_zero() and b1.is_constant():
        return g, Poly(), Poly.const(1 / b1.coeff(0))
    A, B = _coprime_cofactors(a1, b1)
    return g, A, B


def _coprime_cofactors(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    # modular route on primitive parts; rational Euclid if it ever gives up
    ca, pa = a.primitive()
    cb, pb = b.primitive()
    res = ip.modular_bezout(pa, pb)
    if res is None:
        one, A, B = naive_bezout(a, b)
        assert one.is_one()
        return A, B
    S, T, D = res
    return Poly._raw(S, 1) * (1 / (ca * D)), Poly._raw(T, 1) * (1 / (cb * D))


def bezout_check(a: Poly, b: Poly, g: Poly, A: Poly, B: Poly) -> bool:
    return (A * a + B * b - g).is_zero()


__all__ = [
    "naive_bezout",
    "naive_gcd",
    "subresultant_gcd",
    "poly_gcd",
    "poly_gcd_bezout",
    "bezout_check",
]
