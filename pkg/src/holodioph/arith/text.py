"""Canonical text forms and a tiny expression parser for elements of Q(x).

Canonical forms (all emitted through ``dumps``):

* Poly    -> ``[[exp, "p/q"], ...]`` ascending, nonzero terms only, q > 0;
* RatFunc -> ``{"den": <poly>, "num": <poly>}`` with monic denominator.

Expressions such as ``"5 + x/(x+1)"`` or ``"3*x^2 - 1/2"`` are accepted
wherever user input is read.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from ..errors import ParseError, ZeroDenominator
from .poly import Poly
from .ratfunc import RatFunc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def rational_to_text(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def rational_from_text(s: str) -> Fraction:
    if not isinstance(s, str) or not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", s):
        raise ParseError(f"not a rational literal: {s!r}")
    try:
        return Fraction(s.replace(" ", ""))
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {s!r}") from exc


def poly_to_obj(p: Poly) -> list:
    return [[e, rational_to_text(c)] for e, c in sorted(p.terms().items())]


def poly_from_obj(obj) -> Poly:
    if not isinstance(obj, list):
        raise ParseError("polynomial must be a list of [exponent, coefficient] pairs")
    terms: dict[int, Fraction] = {}
    for item in obj:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)
                and not isinstance(item[0], bool) and item[0] >= 0):
            raise ParseError(f"bad polynomial term {item!r}")
        e, c = item
        if e in terms:
            raise ParseError(f"repeated exponent {e}")
        terms[e] = rational_from_text(c)
    return Poly(terms)


def ratfunc_to_obj(f: RatFunc) -> dict:
    return {"num": poly_to_obj(f.num), "den": poly_to_obj(f.den)}


def ratfunc_from_obj(obj) -> RatFunc:
    """Accepts the canonical object form or an expression string."""
    if isinstance(obj, str):
        return parse_ratfunc(obj)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        if isinstance(obj, float):
            raise ParseError("floating point values are not accepted")
        return RatFunc(obj)
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise ParseError("rational function must be {num, den} or an expression")
    num, den = poly_from_obj(obj["num"]), poly_from_obj(obj["den"])
    try:
        return RatFunc(num, den)
    except ZeroDenominator as exc:
        raise ParseError(str(exc)) from exc


def poly_to_text(p: Poly) -> str:
    return dumps(poly_to_obj(p))


def poly_from_text(s: str) -> Poly:
    try:
        return poly_from_obj(json.loads(s))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc


def ratfunc_to_text(f: RatFunc) -> str:
    return dumps(ratfunc_to_obj(f))


def ratfunc_from_text(s: str) -> RatFunc:
    try:
        obj = json.loads(s)
    except json.JSONDecodeError:
        return parse_ratfunc(s)
    return ratfunc_from_obj(obj)


# -- expressions ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*/^()]))")


def _tokenize(s: str) -> list[str]:
    out = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {s!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok == "/":
                    if rhs.is_zero():
                        raise ParseError(f"division by zero in {self.text!r}")
                    val = val / rhs
                else:
                    val = val * rhs
            elif tok == "x" or tok == "(" or (tok is not None and tok.isdigit()):
                # implicit product: 2x, 3(x+1), x(x-1)
                val = val * self.power()
            else:
                return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() == "(":
                self.take()
                if self.peek() == "-":
                    self.take()
                    sign = -sign
                exp = int(self.take())
                self.take(")")
            else:
                tok = self.take()
                if not tok.isdigit():
                    raise ParseError(f"integer exponent expected in {self.text!r}")
                exp = int(tok)
            if sign < 0 and base.is_zero():
                raise ParseError("zero raised to a negative power")
            return base ** (sign * exp)
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return RatFunc(int(tok))
        if tok == "x":
            return RatFunc.x()
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an arithmetic expression in ``x`` with integer literals."""
    return _Parser(text).parse()
