"""Exact arithmetic over Q: polynomials, rational functions, places."""

from .gcd import bezout_check, naive_gcd, poly_gcd, poly_gcd_bezout, subresultant_gcd
from .poly import INF, NEG_INF, ONE, ZERO, Infinity, Poly, X, as_rational
from .ratfunc import (
    PLACE_AT_INFINITY,
    PLACE_AT_ZERO,
    Place,
    RatFunc,
    eval_at,
    is_irreducible_small,
    ord_at_place,
    rational_roots,
    ratfunc_arith,
    ratfunc_make,
)

__all__ = [
    "INF",
    "NEG_INF",
    "ONE",
    "ZERO",
    "X",
    "Infinity",
    "Place",
    "PLACE_AT_INFINITY",
    "PLACE_AT_ZERO",
    "Poly",
    "RatFunc",
    "as_rational",
    "bezout_check",
    "eval_at",
    "is_irreducible_small",
    "naive_gcd",
    "ord_at_place",
    "poly_gcd",
    "poly_gcd_bezout",
    "rational_roots",
    "ratfunc_arith",
    "ratfunc_make",
    "subresultant_gcd",
]
