import json
import random
from dataclasses import replace

import pytest

from holodioph.arith import Poly, RatFunc
from holodioph.curve import default_curve
from holodioph.denef import denef_term
from holodioph.dioph import DiophSystem, check_assignment, specialize
from holodioph.errors import NotInRing, ParseError, ZeroN
from holodioph.witness import (
    Accept,
    Reject,
    build_witness,
    check_witness,
    classify_xi,
    emit_system,
    in_ideal_assignment,
    witness_from_json,
    witness_to_json,
    zplusi_assignment,
)
from holodioph.rings import HolomorphyRing
from fuzz import corrupt, rand_ring_element, rand_unit
from oracles import reference_check

E = default_curve()
R = HolomorphyRing.local_at_zero()
X = RatFunc.x()


def test_build_witness_n1():
    w = build_witness(E, R, 1)
    assert (w.u, w.v, w.z, w.w) == (RatFunc(1), X, RatFunc(1), RatFunc(1))
    assert (w.a, w.b) == (RatFunc(1), RatFunc(1))
    assert (w.A, w.B) == (RatFunc(1), RatFunc(0))
    assert (w.a - w.b * 1).is_zero()


def test_build_witness_n2_and_zero():
    w = build_witness(E, R, 2)
    assert (w.a / w.b)(0) == 2
    assert check_witness(E, R, RatFunc(2), w) == Accept(2)
    with pytest.raises(ZeroN):
        build_witness(E, R, 0)


@pytest.mark.parametrize("n", [1, 2, 3, -4, 6])
def test_polynomial_bezout_route(n):
    w = build_witness(E, R, n, bezout="polynomial")
    assert w.A.is_poly() and w.B.is_poly()
    assert check_witness(E, R, RatFunc(n), w) == Accept(n)


def test_check_examples():
    w = build_witness(E, R, 2)
    xi = 2 + X * RatFunc(Poly([3, 1]), Poly([1, 1]))
    assert check_witness(E, R, xi, w) == Accept(2)
    bad = replace(w, B=w.B + 1)
    res = check_witness(E, R, RatFunc(2), bad)
    assert isinstance(res, Reject) and res.reason == "BezoutFailed"
    res = check_witness(E, R, RatFunc(1, 2), w)
    assert res.reason == "NotInZPlusI"
    res = check_witness(E, R, RatFunc(3), w)
    assert res.reason == "IdealMembership"


def test_classify_examples():
    res = classify_xi(E, R, 5 + X / (X + 1))
    assert res.verdict == "IntegerPart" and res.n == 5
    assert check_witness(E, R, 5 + X / (X + 1), res.witness) == Accept(5)
    assert classify_xi(E, R, X * X).verdict == "InIdeal"
    assert classify_xi(E, R, RatFunc(1, 2)).verdict == "NotInZPlusI"
    with pytest.raises(NotInRing):
        classify_xi(E, R, 1 / X)


def test_completeness_small_range():
    rng = random.Random(5)
    for n in [k for k in range(-8, 9) if k]:
        for _ in range(5):
            xi = n + X * rand_ring_element(rng)
            res = classify_xi(E, R, xi)
            assert res.verdict == "IntegerPart" and res.n == n


def test_unit_robustness():
    rng = random.Random(20)
    for i in range(20):
        n = rng.choice([k for k in range(-10, 11) if k])
        w = build_witness(E, R, n)
        eps = rand_unit(rng)
        xi = n + X * rand_ring_element(rng)
        assert check_witness(E, R, xi, w.scaled(eps)) == Accept(n)


TABLE = {k: (denef_term(E, k).x_n, denef_term(E, k).y_n) for k in range(-10, 11) if k}


def test_corruptions_match_reference_checker():
    rng = random.Random(1234)
    accepted = 0
    for _ in range(200):
        n = rng.choice([k for k in range(-6, 7) if k])
        wit = build_witness(E, R, n)
        xi = n + X * rand_ring_element(rng)
        bad, bad_xi, label = corrupt(rng, wit, xi, TABLE)
        got = check_witness(E, R, bad_xi, bad)
        ref = reference_check(E, bad_xi, bad, TABLE)
        if isinstance(got, Accept):
            accepted += 1
            assert ref == ("Accept", got.n), label
            assert (bad_xi - got.n)(0) == 0
        else:
            assert ref == ("Reject", got.reason), label
    assert 0 < accepted < 200


def test_emitted_system_consistency():
    S = emit_system(E, R)
    assert S.params == ("xi",)
    rng = random.Random(17)
    for n in (1, -2, 3, 7):
        w = build_witness(E, R, n)
        xi = n + X * rand_ring_element(rng)
        vals = zplusi_assignment(R, xi, w)
        assert check_assignment(S, vals, R) == 1
        sp = specialize(S, [xi])
        for f in sp.clauses[1].eqs:
            assert f.evaluate(vals).is_zero()
        for g in sp.clauses[1].nonzero:
            assert not g.evaluate(vals).is_zero()
    assert check_assignment(S, in_ideal_assignment(R, X * X), R) == 0


def test_emitted_system_serialization_round_trip():
    text = emit_system(E, R).to_json()
    assert DiophSystem.from_json(text).to_json() == text


def test_witness_json_round_trip():
    w = build_witness(E, R, 3)
    text = witness_to_json(w, RatFunc(3))
    w2, xi = witness_from_json(text)
    assert w2 == w and xi == RatFunc(3)
    assert witness_to_json(w2, xi) == text
    obj = json.loads(text)
    del obj["B"]
    with pytest.raises(ParseError):
        witness_from_json(json.dumps(obj))
    obj = json.loads(text)
    obj["claimed_n"] = 0
    with pytest.raises(ParseError):
        witness_from_json(json.dumps(obj))
