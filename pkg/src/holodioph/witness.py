"""Witnesses for membership of xi in Z + I, where I is the ideal of (x).

xi lies in Z + I exactly when xi is in I or the following system is
solvable in the ring:

    (u/v, z/w) is an affine point of E,      v, w, z != 0,
    a/b = x*u*w / (v*z),   A*a + B*b = 1,    a - b*xi in I.

Every affine point of E is [n]P for some n != 0, and then a/b reduces to
n modulo I, which forces xi = n modulo I.  ``build_witness`` realizes the
forward direction for a given n and ``check_witness`` re-verifies every
relation from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .arith import PLACE_AT_ZERO, RatFunc, ord_at_place, poly_gcd_bezout
from .arith.text import dumps, ratfunc_from_obj, ratfunc_to_obj
from .curve import CurvePoint, TwistedCurve, on_curve, recognize_multiple
from .denef import denef_term
from .dioph import Clause, DiophSystem, MultiPoly
from .errors import HolodiophError, NotAMultiple, NotInRing, ParseError, ZeroN
from .rings import (
    CoprimalityCertificate,
    HolomorphyRing,
    coprime_in_ring,
    ideal_contains,
    ideal_generators,
    reduce_to_integer,
    ring_contains,
)

ENTRIES = ("u", "v", "w", "z", "a", "b", "A", "B")


class SoundnessError(HolodiophError):
    """An accepted witness whose xi does not reduce to the recognized n."""


@dataclass(frozen=True)
class ZplusIWitness:
    u: RatFunc
    v: RatFunc
    w: RatFunc
    z: RatFunc
    a: RatFunc
    b: RatFunc
    A: RatFunc
    B: RatFunc
    claimed_n: int

    def entries(self) -> dict[str, RatFunc]:
        return {k: getattr(self, k) for k in ENTRIES}

    def point(self) -> CurvePoint:
        return CurvePoint(self.u / self.v, self.z / self.w)

    def scaled(self, eps: RatFunc) -> "ZplusIWitness":
        """(a, b, A, B) -> (eps a, eps b, A/eps, B/eps)."""
        return replace(self, a=self.a * eps, b=self.b * eps, A=self.A / eps, B=self.B / eps)


@dataclass(frozen=True)
class Accept:
    n: int

    @property
    def accepted(self) -> bool:
        return True


@dataclass(frozen=True)
class Reject:
    reason: str
    detail: str = ""

    @property
    def accepted(self) -> bool:
        return False


def _require_local_at_x(ring: HolomorphyRing):
    if ring.prime != PLACE_AT_ZERO:
        raise ValueError("witnesses are defined for the prime (x)")


def build_witness(
    E: TwistedCurve, ring: HolomorphyRing, n: int, bezout: str = "ring"
) -> ZplusIWitness:
    """Witness for xi = n built from [n]P.

    ``bezout="ring"`` takes (A, B) from the ring-level certificate, which is
    A = 1/a, B = 0 whenever a is a unit of the ring (always so at (x) since
    a(0) = n b(0) != 0).  ``bezout="polynomial"`` uses the polynomial
    Bezout relation of (alpha_n, beta_n) instead; its cofactors grow
    quickly with n.
    """
    if n == 0:
        raise ZeroN("n must be nonzero")
    _require_local_at_x(ring)
    term = denef_term(E, n)
    u, v = RatFunc(term.x_n.num), RatFunc(term.x_n.den)
    z, w = RatFunc(term.y_n.num), RatFunc(term.y_n.den)
    a, b = RatFunc(term.alpha_n), RatFunc(term.beta_n)
    if bezout == "polynomial":
        g, A0, B0 = poly_gcd_bezout(term.alpha_n, term.beta_n)
        A, B = RatFunc(A0, g), RatFunc(B0, g)
    elif bezout == "ring":
        cert = coprime_in_ring(ring, a, b)
        if not isinstance(cert, CoprimalityCertificate):
            raise NotInRing(f"alpha_{n}, beta_{n} are not coprime in {ring}")
        A, B = cert.A, cert.B
    else:
        raise ValueError(f"unknown bezout mode {bezout!r}")
    wit = ZplusIWitness(u, v, w, z, a, b, A, B, n)
    for name, val in wit.entries().items():
        if not ring_contains(ring, val):
            raise NotInRing(f"witness entry {name} = {val} is not in {ring}")
    return wit


def _ideal_reason(ring: HolomorphyRing, xi: RatFunc) -> str:
    return "NotInZPlusI" if reduce_to_integer(ring, xi) is None else "IdealMembership"


def check_witness(
    E: TwistedCurve, ring: HolomorphyRing, xi: RatFunc, wit: ZplusIWitness
) -> Union[Accept, Reject]:
    """Verify each relation in a fixed order; the first failure names the Reject."""
    _require_local_at_x(ring)
    x = RatFunc.x()
    if not ring_contains(ring, xi):
        return Reject("Membership", "xi is not in the ring")
    for name, val in wit.entries().items():
        if not ring_contains(ring, val):
            return Reject("Membership", f"{name} is not in the ring")
    for name in ("v", "w", "z"):
        if getattr(wit, name).is_zero():
            return Reject("NonZero", f"{name} = 0")
    verdict = _curve_verdict(E, wit)
    if isinstance(verdict, Reject):
        return verdict
    n = verdict
    if n != wit.claimed_n:
        return Reject("ClaimMismatch", f"point is [{n}]P, claimed {wit.claimed_n}")
    if wit.a * wit.v * wit.z != wit.b * x * wit.u * wit.w:
        return Reject("RatioFailed", "a*v*z != b*x*u*w")
    if wit.A * wit.a + wit.B * wit.b != RatFunc(1):
        return Reject("BezoutFailed", "A*a + B*b != 1")
    if not ideal_contains(ring, wit.a - wit.b * xi):
        return Reject(_ideal_reason(ring, xi), "a - b*xi is not in I")
    if ord_at_place(xi - n, PLACE_AT_ZERO) < 1:
        raise SoundnessError(f"accepted witness for n={n} but xi - n is not in I")
    return Accept(n)


# memo for the witness-independent curve checks, keyed by the exact
# (u, v, w, z); a hit only ever replays an identical computation
_CURVE_MEMO: dict = {}
_MEMO_LIMIT = 256


def _curve_verdict(E: TwistedCurve, wit: ZplusIWitness) -> Union[int, Reject]:
    key = (E.F, wit.u, wit.v, wit.w, wit.z)
    if key in _CURVE_MEMO:
        return _CURVE_MEMO[key]
    pt = wit.point()
    if not on_curve(E, pt):
        val: Union[int, Reject] = Reject("NotOnCurve", "(u/v, z/w) is not on the curve")
    else:
        try:
            val = recognize_multiple(E, pt)
        except NotAMultiple:
            val = Reject("NotAMultiple", "(u/v, z/w) is not a multiple of P")
    if len(_CURVE_MEMO) >= _MEMO_LIMIT:
        _CURVE_MEMO.pop(next(iter(_CURVE_MEMO)))
    _CURVE_MEMO[key] = val
    return val


@dataclass(frozen=True)
class ClassificationResult:
    verdict: str  # "InIdeal" | "IntegerPart" | "NotInZPlusI"
    n: Optional[int] = None
    witness: Optional[ZplusIWitness] = None
    certificate_trace: tuple = field(default=())

    def to_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "witness": witness_to_obj(self.witness) if self.witness else None,
            "trace": [list(t) for t in self.certificate_trace],
        }


def classify_xi(E: TwistedCurve, ring: HolomorphyRing, xi: RatFunc) -> ClassificationResult:
    _require_local_at_x(ring)
    if not ring_contains(ring, xi):
        raise NotInRing(f"xi = {xi} is not in {ring}")
    if ideal_contains(ring, xi):
        return ClassificationResult("InIdeal", certificate_trace=(("xi in I", True),))
    n = reduce_to_integer(ring, xi)
    if n is None:
        value = xi(0)
        return ClassificationResult(
            "NotInZPlusI", certificate_trace=((f"xi(0) = {value} is an integer", False),)
        )
    wit = build_witness(E, ring, n)
    verdict = check_witness(E, ring, xi, wit)
    trace = (
        (f"xi(0) = {n}", True),
        ("witness built from [n]P", True),
        ("witness accepted", verdict.accepted),
    )
    if not verdict.accepted:
        raise SoundnessError(f"witness for n={n} rejected: {verdict.reason}")
    return ClassificationResult("IntegerPart", n, wit, trace)


# -- the emitted system --------------------------------------------------------

SYSTEM_EXISTS = ("u", "v", "w", "z", "a", "b", "A", "B", "lam", "mu")


def emit_system(E: TwistedCurve, ring: HolomorphyRing) -> DiophSystem:
    """System in the parameter ``xi`` whose ring solutions exist iff xi is in Z + I.

    Clause 0 says xi is in I; clause 1 is the curve-point system, with
    ideal membership written through the generator of I.
    """
    _require_local_at_x(ring)
    (g,) = ideal_generators(ring)
    names = ("xi",) + SYSTEM_EXISTS
    xi, u, v, w, z, a, b, A, B, lam, mu = (MultiPoly.var(s, names) for s in names)
    x = RatFunc.x()
    F = E.F
    # x^3 F(1/x): numerator of the twist
    twist_num = RatFunc(F.reversed(3))
    F_hom = u ** 3 + F.coeff(2) * u * u * v + F.coeff(1) * u * v * v + F.coeff(0) * v ** 3
    curve_eq = twist_num * z * z * v ** 3 - x ** 3 * w * w * F_hom
    ratio_eq = a * v * z - x * b * u * w
    bezout_eq = A * a + B * b - 1
    ideal_eq = a - b * xi - g * lam
    in_ideal = Clause([xi - g * mu])
    main = Clause([curve_eq, ratio_eq, bezout_eq, ideal_eq], [v, w, z])
    return DiophSystem(("xi",), SYSTEM_EXISTS, (in_ideal, main))


def zplusi_assignment(ring: HolomorphyRing, xi: RatFunc, wit: ZplusIWitness) -> dict[str, RatFunc]:
    """Values for every variable of ``emit_system`` from a witness."""
    (g,) = ideal_generators(ring)
    vals = {"xi": xi, **wit.entries()}
    vals["lam"] = (wit.a - wit.b * xi) / g
    vals["mu"] = RatFunc(0)
    return vals


def in_ideal_assignment(ring: HolomorphyRing, xi: RatFunc) -> dict[str, RatFunc]:
    (g,) = ideal_generators(ring)
    vals = {k: RatFunc(0) for k in SYSTEM_EXISTS}
    vals["xi"] = xi
    vals["mu"] = xi / g
    return vals


# -- witness files --------------------------------------------------------------


def witness_to_obj(wit: ZplusIWitness, xi: Optional[RatFunc] = None) -> dict:
    obj = {k: ratfunc_to_obj(v) for k, v in wit.entries().items()}
    obj["claimed_n"] = wit.claimed_n
    if xi is not None:
        obj["xi"] = ratfunc_to_obj(xi)
    return obj


def witness_from_obj(obj) -> tuple[ZplusIWitness, Optional[RatFunc]]:
    if not isinstance(obj, dict):
        raise ParseError("witness must be a JSON object")
    missing = set(ENTRIES) | {"claimed_n"}
    missing -= set(obj)
    if missing:
        raise ParseError(f"witness is missing {sorted(missing)}")
    extra = set(obj) - set(ENTRIES) - {"claimed_n", "xi"}
    if extra:
        raise ParseError(f"unknown witness fields {sorted(extra)}")
    n = obj["claimed_n"]
    if not isinstance(n, int) or isinstance(n, bool) or n == 0:
        raise ParseError("claimed_n must be a nonzero integer")
    vals = {k: ratfunc_from_obj(obj[k]) for k in ENTRIES}
    xi = ratfunc_from_obj(obj["xi"]) if obj.get("xi") is not None else None
    return ZplusIWitness(**vals, claimed_n=n), xi


def witness_to_json(wit: ZplusIWitness, xi: Optional[RatFunc] = None) -> str:
    return dumps(witness_to_obj(wit, xi))


def witness_from_json(text: str) -> tuple[ZplusIWitness, Optional[RatFunc]]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return witness_from_obj(obj)


__all__ = [
    "ZplusIWitness",
    "Accept",
    "Reject",
    "ClassificationResult",
    "SoundnessError",
    "build_witness",
    "check_witness",
    "classify_xi",
    "emit_system",
    "zplusi_assignment",
    "in_ideal_assignment",
    "witness_to_obj",
    "witness_from_obj",
    "witness_to_json",
    "witness_from_json",
]
