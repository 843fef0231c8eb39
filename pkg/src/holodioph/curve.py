"""The twisted elliptic curve F(1/x) * Y^2 = F(X) over Q(x).

The group law is computed directly on the twisted model.  With
d = F(1/x) and c2 the T^2 coefficient of F, the chord through two points
has slope (Y2 - Y1)/(X2 - X1), the tangent has slope F'(X1)/(2 d Y1), and
the third intersection is X3 = d*lam^2 - c2 - X1 - X2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import Place, Poly, RatFunc, rational_roots
from .arith.text import ratfunc_from_obj, ratfunc_to_obj, rational_from_text, rational_to_text
from .errors import (
    AssumptionViolated,
    HasCM,
    InfinityInput,
    NotAMultiple,
    NotCubic,
    NotOnCurve,
    ParseError,
    ReducibleF,
    Singular,
)

# j-invariants of the thirteen imaginary quadratic orders of class number one,
# keyed by discriminant
CM_J_INVARIANTS: dict[int, int] = {
    -3: 0,
    -4: 1728,
    -7: -3375,
    -8: 8000,
    -11: -32768,
    -12: 54000,
    -16: 287496,
    -19: -884736,
    -27: -12288000,
    -28: 16581375,
    -43: -884736000,
    -67: -147197952000,
    -163: -262537412640768000,
}


@dataclass(frozen=True)
class CurvePoint:
    """An affine point (X, Y) or the point at infinity (X is None)."""

    X: Optional[RatFunc] = None
    Y: Optional[RatFunc] = None

    def __post_init__(self):
        if (self.X is None) != (self.Y is None):
            raise ValueError("both coordinates must be given for an affine point")
        if self.X is not None:
            object.__setattr__(self, "X", RatFunc.coerce(self.X))
            object.__setattr__(self, "Y", RatFunc.coerce(self.Y))

    @property
    def is_infinity(self) -> bool:
        return self.X is None

    @property
    def kind(self) -> str:
        return "Infinity" if self.is_infinity else "Affine"

    def __neg__(self) -> "CurvePoint":
        return self if self.is_infinity else CurvePoint(self.X, -self.Y)

    def __str__(self):
        return "infinity" if self.is_infinity else f"({self.X}, {self.Y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class AssumptionRecord:
    """Hypotheses carried along with a curve: the genus of K, the optional pole
    divisor places, and whether rank one of E(K) is taken as given."""

    genus: int = 0
    pole_divisor_places: Optional[tuple[Place, ...]] = None
    rank_one_assumed: bool = True

    def __post_init__(self):
        if self.pole_divisor_places is not None:
            places = tuple(self.pole_divisor_places)
            object.__setattr__(self, "pole_divisor_places", places)
            total = sum(q.degree for q in places)
            if total < 2 * self.genus + 2:
                raise AssumptionViolated(
                    f"pole divisor has degree {total} < 2g+2 = {2 * self.genus + 2}"
                )


def _invariants(F: Poly) -> tuple[Fraction, Fraction, Fraction]:
    """(p, q, disc) for monic F through its depressed form T^3 + pT + q."""
    c2, c1, c0 = F.coeff(2), F.coeff(1), F.coeff(0)
    p = c1 - c2 * c2 / 3
    q = 2 * c2 ** 3 / 27 - c2 * c1 / 3 + c0
    disc = -4 * p ** 3 - 27 * q ** 2
    return p, q, disc


@dataclass(frozen=True)
class TwistedCurve:
    F: Poly
    twist: RatFunc
    discriminant: Fraction
    j_invariant: Fraction
    assumption_record: AssumptionRecord = AssumptionRecord()
    _cache: list = field(default_factory=list, compare=False, repr=False, hash=False)

    @property
    def base_point(self) -> CurvePoint:
        return CurvePoint(1 / RatFunc.x(), RatFunc(1))

    @property
    def has_cm(self) -> bool:
        return self.j_invariant in CM_J_INVARIANTS.values()

    @property
    def irreducible(self) -> bool:
        return not rational_roots(self.F)

    def eval_F(self, X: RatFunc) -> RatFunc:
        acc = RatFunc(0)
        for k in range(3, -1, -1):
            acc = acc * X + self.F.coeff(k)
        return acc

    def eval_dF(self, X: RatFunc) -> RatFunc:
        F = self.F
        return (X * 3 + 2 * F.coeff(2)) * X + F.coeff(1)

    def multiple(self, n: int) -> CurvePoint:
        """[n]P, cached; grows the cache by repeated addition of P."""
        if n < 0:
            return -self.multiple(-n)
        if n == 0:
            return INFINITY
        cache = self._cache
        if not cache:
            cache.append(self.base_point)
        P = cache[0]
        while len(cache) < n:
            cache.append(point_add(self, cache[-1], P, check=False))
        return cache[n - 1]


def curve_setup(
    F: Poly | Sequence,
    pole_divisor_places: Optional[Sequence[Place]] = None,
    genus: int = 0,
    rank_one_assumed: bool = True,
) -> TwistedCurve:
    """Validate the cubic F and build E_x : F(1/x) Y^2 = F(X).

    ``F`` may be a Poly or a list of four coefficients in descending degree.
    Raises NotCubic, Singular, HasCM or ReducibleF (checked in that order).
    """
    if not isinstance(F, Poly):
        F = curve_poly_from_coeffs(F)
    if F.degree != 3:
        raise NotCubic(f"F must have degree 3, got {F.degree}")
    F = F.monic()
    p, q, disc = _invariants(F)
    if disc == 0:
        raise Singular(f"F = {F} has a repeated root")
    j = 6912 * p ** 3 / (4 * p ** 3 + 27 * q ** 2)
    if j in CM_J_INVARIANTS.values():
        raise HasCM(f"j = {j} is a CM j-invariant")
    roots = rational_roots(F)
    if roots:
        raise ReducibleF(f"F has the rational root {roots[0]}")
    record = AssumptionRecord(
        genus,
        tuple(pole_divisor_places) if pole_divisor_places is not None else None,
        rank_one_assumed,
    )
    x_inv = 1 / RatFunc.x()
    d = RatFunc(0)
    for k in range(3, -1, -1):
        d = d * x_inv + F.coeff(k)
    return TwistedCurve(F, d, disc, j, record)


def default_curve() -> TwistedCurve:
    """E for F = T^3 + T + 1."""
    return curve_setup(Poly([1, 1, 0, 1]))


def curve_poly_from_coeffs(coeffs: Sequence) -> Poly:
    if len(coeffs) != 4:
        raise NotCubic(f"need 4 coefficients, got {len(coeffs)}")
    vals = []
    for c in coeffs:
        if isinstance(c, bool) or isinstance(c, float):
            raise ParseError(f"bad coefficient {c!r}")
        vals.append(rational_from_text(c) if isinstance(c, str) else Fraction(c))
    return Poly(list(reversed(vals)))


def on_curve(E: TwistedCurve, pt: CurvePoint) -> bool:
    if pt.is_infinity:
        return True
    return E.twist * pt.Y * pt.Y == E.eval_F(pt.X)


def _require(E, *pts):
    for pt in pts:
        if not on_curve(E, pt):
            raise NotOnCurve(f"{pt} is not on the curve")


def negate(E: TwistedCurve, pt: CurvePoint) -> CurvePoint:
    return -pt


def point_add(E: TwistedCurve, p1: CurvePoint, p2: CurvePoint, check: bool = True) -> CurvePoint:
    if check:
        _require(E, p1, p2)
    if p1.is_infinity:
        return p2
    if p2.is_infinity:
        return p1
    d = E.twist
    X1, Y1, X2, Y2 = p1.X, p1.Y, p2.X, p2.Y
    if X1 == X2:
        if Y1 == -Y2:
            # inverse pair, including doubling a point with Y = 0
            return INFINITY
        lam = E.eval_dF(X1) / (d * Y1 * 2)
    else:
        lam = (Y2 - Y1) / (X2 - X1)
    X3 = d * lam * lam - E.F.coeff(2) - X1 - X2
    Y3 = -(lam * (X3 - X1) + Y1)
    return CurvePoint(X3, Y3)


def scalar_mul(E: TwistedCurve, n: int, pt: CurvePoint, check: bool = True) -> CurvePoint:
    """[n]pt by double-and-add."""
    if check:
        _require(E, pt)
    if n < 0:
        return -scalar_mul(E, -n, pt, check=False)
    acc = INFINITY
    base = pt
    while n:
        if n & 1:
            acc = point_add(E, acc, base, check=False)
        n >>= 1
        if n:
            base = point_add(E, base, base, check=False)
    return acc


def recognize_multiple(E: TwistedCurve, pt: CurvePoint) -> int:
    """The nonzero n with pt = [n]P.

    Searches k = 1, 2, ... while the denominator degree of x_k does not exceed
    that of X(pt); this degree grows strictly with k on the base point.
    """
    if pt.is_infinity:
        raise InfinityInput("the point at infinity is [0]P and 0 is excluded")
    _require(E, pt)
    target = pt.X.den.degree
    k = 1
    while True:
        cand = E.multiple(k)
        if cand.X.den.degree > target:
            raise NotAMultiple(f"{pt} is not [n]P for any n != 0")
        if cand.X == pt.X:
            if cand.Y == pt.Y:
                return k
            if cand.Y == -pt.Y:
                return -k
        k += 1


# -- serialization ------------------------------------------------------------------


def point_to_obj(pt: CurvePoint):
    if pt.is_infinity:
        return "infinity"
    return {"X": ratfunc_to_obj(pt.X), "Y": ratfunc_to_obj(pt.Y)}


def point_from_obj(obj) -> CurvePoint:
    if obj == "infinity":
        return INFINITY
    if not isinstance(obj, dict) or set(obj) != {"X", "Y"}:
        raise ParseError('a point is {"X": ..., "Y": ...} or "infinity"')
    return CurvePoint(ratfunc_from_obj(obj["X"]), ratfunc_from_obj(obj["Y"]))


def curve_to_obj(E: TwistedCurve) -> list:
    return [rational_to_text(E.F.coeff(k)) for k in range(3, -1, -1)]


def curve_from_obj(obj) -> TwistedCurve:
    if not isinstance(obj, list):
        raise ParseError("curve descriptor must be a list of 4 coefficients")
    return curve_setup(curve_poly_from_coeffs(obj))
