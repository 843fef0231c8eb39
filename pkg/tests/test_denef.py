import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holodioph.arith import INF, PLACE_AT_ZERO, Poly, RatFunc, ord_at_place
from holodioph.curve import default_curve, point_add
from holodioph.denef import (
    DenefTerm,
    congruence_pins_n,
    coprime_facts,
    denef_term,
    sweep,
    verify_coprime_form,
    verify_order_lemma,
)
from holodioph.errors import NotCoprimeInput, RatioMismatch, ZeroN
from holodioph.rings import HolomorphyRing
from oracles import taylor_order
from strategies import polys, ratfuncs

E = default_curve()
LOCAL = HolomorphyRing.local_at_zero()
X = RatFunc.x()


def test_term_one():
    t = denef_term(E, 1)
    assert (t.x_n, t.y_n) == (1 / X, RatFunc(1))
    assert t.alpha_n == Poly.const(1) and t.beta_n == Poly.const(1)


def test_term_two_value_at_zero():
    t = denef_term(E, 2)
    # oracle: doubling done by point_add, ratio formed by hand
    D = point_add(E, E.base_point, E.base_point)
    assert t.ratio == X * D.X / D.Y
    assert t.ratio(0) == 2
    assert t.beta_n.lc == 1


def test_term_minus_one():
    t = denef_term(E, -1)
    assert t.y_n == RatFunc(-1)
    assert t.alpha_n == Poly.const(-1) and t.beta_n == Poly.const(1)
    assert t.ratio(0) == -1


def test_zero_n():
    with pytest.raises(ZeroN):
        denef_term(E, 0)


def test_order_lemma_examples():
    r1 = verify_order_lemma(denef_term(E, 1))
    assert r1.ord_value == INF and r1.passed
    r2 = verify_order_lemma(denef_term(E, 2))
    assert r2.ord_value >= 1 and r2.passed
    t = denef_term(E, 2)
    bad = DenefTerm(2, t.x_n, t.y_n * 2, t.alpha_n, t.beta_n)
    rb = verify_order_lemma(bad)
    assert rb.ord_value == 0 and not rb.passed


def test_coprime_form_examples():
    t = denef_term(E, 2)
    a, b = RatFunc(t.alpha_n), RatFunc(t.beta_n)
    rep = verify_coprime_form(LOCAL, t, a, b)
    assert rep.passed and rep.unit_epsilon == RatFunc(1)
    assert rep.quotient_w.is_poly() and rep.beta_at_zero != 0

    u = RatFunc(Poly([1, 1]), Poly([2, 1]))
    rep = verify_coprime_form(LOCAL, t, u * a, u * b)
    assert rep.passed and rep.unit_epsilon == u

    with pytest.raises(NotCoprimeInput):
        verify_coprime_form(LOCAL, t, X * a, X * b)
    with pytest.raises(RatioMismatch):
        verify_coprime_form(LOCAL, t, a + 1, b)


def test_sweeps_up_to_25():
    ns = [n for n in range(-25, 26) if n]
    for term, report, facts in sweep(E, ns):
        assert report.passed, term.n
        assert facts.passed, term.n
        assert term.ratio(0) == term.n


def test_negative_terms_mirror_positive():
    for n in range(1, 8):
        tp, tn = denef_term(E, n), denef_term(E, -n)
        assert tn.x_n == tp.x_n and tn.y_n == -tp.y_n
        assert tn.alpha_n == -tp.alpha_n and tn.beta_n == tp.beta_n


def test_coprime_facts_detect_corruption():
    t = denef_term(E, 3)
    bad = DenefTerm(3, t.x_n, t.y_n, t.alpha_n + 1, t.beta_n)
    assert not coprime_facts(bad).passed


@settings(max_examples=50)
@given(ratfuncs(4, nonzero=True))
def test_order_pullback(z):
    if ord_at_place(z, PLACE_AT_ZERO) < 0:
        z = z * X ** (-ord_at_place(z, PLACE_AT_ZERO))
    ord_p_x = ord_at_place(X, PLACE_AT_ZERO)
    assert ord_p_x == 1
    assert ord_at_place(z, PLACE_AT_ZERO) == ord_p_x * taylor_order(z)


TERMS = {n: denef_term(E, n) for n in range(-6, 7) if n}


@given(st.sampled_from(sorted(TERMS)), polys(3), polys(3, nonzero=True))
def test_congruence_pins_n(n, num, den):
    if den.coeff(0) == 0:
        den = den + 1
        if den.coeff(0) == 0 or den.is_zero():
            return
    r = RatFunc(num, den)
    term = TERMS[n]
    lhs, rhs = congruence_pins_n(term, n + X * r)
    assert lhs and rhs
    lhs, rhs = congruence_pins_n(term, RatFunc(n + 1))
    assert not lhs and not rhs
    # arbitrary c regular at 0: lhs implies rhs
    c = r + (n if num.coeff(0) == 0 else 0)
    lhs, rhs = congruence_pins_n(term, c)
    assert (not lhs) or rhs
