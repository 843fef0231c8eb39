"""Diophantine systems over Q(x) and the transformations applied to them.

A system is a disjunction of clauses; a clause is a conjunction of
equations ``f = 0`` and primitive ``f != 0`` constraints.  Variables are
split into parameters (the tuple whose membership is being defined) and
existentially quantified unknowns.

Every transformation extends ``coeff_basis`` by the non-integer
coefficients it introduces, so each coefficient of a system is either an
integer or literally one of the basis elements.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .arith import Poly, RatFunc
from .arith.text import dumps, ratfunc_from_obj, ratfunc_to_obj, ratfunc_to_text
from .errors import (
    ArityMismatch,
    BadAlgebra,
    EmptyGenerators,
    NotCollapsible,
    NotInZPlusI,
    ParseError,
)
from .rings import HolomorphyRing, reduce_to_integer, ring_contains

Exps = tuple[int, ...]


def _coerce(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, Poly):
        return RatFunc(c)
    return RatFunc(Fraction(c))


class MultiPoly:
    """Polynomial in named variables with coefficients in Q(x)."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exps, object]] = None):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean: dict[Exps, RatFunc] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != k or any(e < 0 for e in exps):
                raise ArityMismatch(f"exponent vector {exps} does not match {k} variables")
            c = _coerce(c)
            if not c.is_zero():
                clean[exps] = clean[exps] + c if exps in clean else c
                if clean[exps].is_zero():
                    del clean[exps]
        self.terms = dict(sorted(clean.items()))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        exps = tuple(int(v == name) for v in variables)
        if sum(exps) != 1:
            raise ArityMismatch(f"{name!r} is not one of {variables}")
        return cls(variables, {exps: 1})

    @classmethod
    def const(cls, c, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    # -- ring operations ------------------------------------------------------

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ArityMismatch("operands use different variable lists")
            return other
        return MultiPoly.const(other, self.variables)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[Exps, RatFunc] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        acc = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[RatFunc]:
        return list(self.terms.values())

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_variables(self) -> set[str]:
        return {v for e in self.terms for v, k in zip(self.variables, e) if k}

    # -- substitution ---------------------------------------------------------

    def evaluate(self, values: Mapping[str, object]) -> RatFunc:
        """Value at a full assignment of the variables."""
        vals = []
        for v in self.variables:
            if v not in values:
                raise ArityMismatch(f"no value for {v!r}")
            vals.append(_coerce(values[v]))
        acc = RatFunc(0)
        powers: dict[tuple[int, int], RatFunc] = {}
        for exps, c in self.terms.items():
            t = c
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = vals[i] ** e
                    t = t * powers[key]
            acc = acc + t
        return acc

    def substitute(self, mapping: Mapping[str, object], new_variables: Sequence[str]) -> "MultiPoly":
        """Replace variables by polynomials in ``new_variables``.

        Variables missing from ``mapping`` must themselves appear in
        ``new_variables``; values may be scalars or MultiPolys.
        """
        new_variables = tuple(new_variables)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if isinstance(img, MultiPoly):
                    if img.variables != new_variables:
                        img = img.rebase(new_variables)
                else:
                    img = MultiPoly.const(img, new_variables)
            else:
                img = MultiPoly.var(v, new_variables)
            images.append(img)
        acc = MultiPoly(new_variables)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for exps, c in self.terms.items():
            t = MultiPoly.const(c, new_variables)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = images[i] ** e
                    t = t * cache[(i, e)]
            acc = acc + t
        return acc

    def rebase(self, new_variables: Sequence[str]) -> "MultiPoly":
        """Same polynomial over another variable list containing every used variable."""
        new_variables = tuple(new_variables)
        index = {v: i for i, v in enumerate(new_variables)}
        out = {}
        for exps, c in self.terms.items():
            ne = [0] * len(new_variables)
            for v, e in zip(self.variables, exps):
                if e:
                    if v not in index:
                        raise ArityMismatch(f"{v!r} is not among {new_variables}")
                    ne[index[v]] = e
            out[tuple(ne)] = c
        return MultiPoly(new_variables, out)

    # -- text -----------------------------------------------------------------

    def to_obj(self) -> list:
        return [{"exps": list(e), "coeff": ratfunc_to_obj(c)} for e, c in self.terms.items()]

    @classmethod
    def from_obj(cls, obj, variables: Sequence[str]) -> "MultiPoly":
        if not isinstance(obj, list):
            raise ParseError("multipoly must be a list of {exps, coeff}")
        terms = {}
        for item in obj:
            if not isinstance(item, dict) or set(item) != {"exps", "coeff"}:
                raise ParseError(f"bad multipoly term {item!r}")
            exps = item["exps"]
            if not isinstance(exps, list) or not all(
                isinstance(e, int) and not isinstance(e, bool) for e in exps
            ):
                raise ParseError(f"bad exponent vector {exps!r}")
            if tuple(exps) in terms:
                raise ParseError(f"repeated exponent vector {exps}")
            terms[tuple(exps)] = ratfunc_from_obj(item["coeff"])
        return cls(variables, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            if not mono:
                parts.append(f"({c})")
            elif c == RatFunc(1):
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.variables}, {self})"


@dataclass(frozen=True)
class Clause:
    eqs: tuple[MultiPoly, ...] = ()
    nonzero: tuple[MultiPoly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "eqs", tuple(self.eqs))
        object.__setattr__(self, "nonzero", tuple(self.nonzero))

    def holds(self, values: Mapping[str, RatFunc]) -> bool:
        return all(f.evaluate(values).is_zero() for f in self.eqs) and all(
            not g.evaluate(values).is_zero() for g in self.nonzero
        )


def _basis_key(c: RatFunc) -> str:
    return ratfunc_to_text(c)


def _is_integer(c: RatFunc) -> bool:
    if not c.is_constant():
        return False
    v = c.constant_value()
    return v.denominator == 1


def _canonical_basis(cs: Iterable[RatFunc]) -> tuple[RatFunc, ...]:
    uniq = {_basis_key(c): c for c in cs if not _is_integer(c)}
    return tuple(uniq[k] for k in sorted(uniq))


@dataclass(frozen=True)
class DiophSystem:
    params: tuple[str, ...]
    exists: tuple[str, ...]
    clauses: tuple[Clause, ...]
    coeff_basis: tuple[RatFunc, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "exists", tuple(self.exists))
        object.__setattr__(self, "clauses", tuple(self.clauses))
        names = self.params + self.exists
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if not self.clauses:
            raise ValueError("a system needs at least one clause")
        for cl in self.clauses:
            if not cl.eqs and not cl.nonzero:
                raise ValueError("a clause needs at least one constraint")
            for f in cl.eqs + cl.nonzero:
                if f.variables != names:
                    raise ArityMismatch("constraint variables differ from params + exists")
        basis = list(self.coeff_basis) + self.all_coefficients()
        object.__setattr__(self, "coeff_basis", _canonical_basis(basis))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.params + self.exists

    def all_coefficients(self) -> list[RatFunc]:
        return [c for cl in self.clauses for f in cl.eqs + cl.nonzero for c in f.coefficients()]

    def basis_covers_coefficients(self) -> bool:
        keys = {_basis_key(b) for b in self.coeff_basis}
        return all(_is_integer(c) or _basis_key(c) in keys for c in self.all_coefficients())

    def satisfied_clause(self, values: Mapping[str, RatFunc]) -> Optional[int]:
        for i, cl in enumerate(self.clauses):
            if cl.holds(values):
                return i
        return None

    def to_obj(self) -> dict:
        return {
            "params": list(self.params),
            "exists": list(self.exists),
            "clauses": [
                {"eqs": [f.to_obj() for f in cl.eqs], "nonzero": [g.to_obj() for g in cl.nonzero]}
                for cl in self.clauses
            ],
            "coeff_basis": [ratfunc_to_obj(b) for b in self.coeff_basis],
        }

    def to_json(self) -> str:
        return dumps(self.to_obj())

    @classmethod
    def from_obj(cls, obj) -> "DiophSystem":
        need = {"params", "exists", "clauses", "coeff_basis"}
        if not isinstance(obj, dict) or set(obj) != need:
            raise ParseError(f"system object needs exactly the fields {sorted(need)}")
        params, exists = obj["params"], obj["exists"]
        if not all(isinstance(v, str) for v in params + exists):
            raise ParseError("variable names must be strings")
        names = tuple(params) + tuple(exists)
        clauses = []
        for cl in obj["clauses"]:
            if not isinstance(cl, dict) or set(cl) != {"eqs", "nonzero"}:
                raise ParseError("clause needs eqs and nonzero")
            clauses.append(
                Clause(
                    [MultiPoly.from_obj(f, names) for f in cl["eqs"]],
                    [MultiPoly.from_obj(g, names) for g in cl["nonzero"]],
                )
            )
        basis = [ratfunc_from_obj(b) for b in obj["coeff_basis"]]
        return cls(tuple(params), tuple(exists), tuple(clauses), tuple(basis))

    @classmethod
    def from_json(cls, text: str) -> "DiophSystem":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return cls.from_obj(obj)


def check_assignment(
    sys: DiophSystem,
    values: Mapping[str, object],
    ring: Optional[HolomorphyRing] = None,
) -> Optional[int]:
    """Index of a clause satisfied by ``values`` (None if no clause holds).

    With ``ring`` given, every value must also lie in the ring.
    """
    vals = {k: _coerce(v) for k, v in values.items()}
    missing = set(sys.variables) - set(vals)
    if missing:
        raise ArityMismatch(f"no value for {sorted(missing)}")
    if ring is not None and not all(ring_contains(ring, vals[v]) for v in sys.variables):
        return None
    return sys.satisfied_clause(vals)


# -- transformations ---------------------------------------------------------------


def specialize(sys: DiophSystem, point: Sequence) -> DiophSystem:
    """Substitute values for the parameters."""
    if len(point) != len(sys.params):
        raise ArityMismatch(f"expected {len(sys.params)} parameter values, got {len(point)}")
    mapping = {p: _coerce(v) for p, v in zip(sys.params, point)}
    new_vars = sys.exists
    clauses = [
        Clause(
            [f.substitute(mapping, new_vars) for f in cl.eqs],
            [g.substitute(mapping, new_vars) for g in cl.nonzero],
        )
        for cl in sys.clauses
    ]
    return DiophSystem((), sys.exists, tuple(clauses), sys.coeff_basis)


def _fresh(name: str, taken: set) -> str:
    if name in taken:
        raise ValueError(f"fresh variable {name!r} collides with an existing name")
    taken.add(name)
    return name


def to_single_equation(sys: DiophSystem, over_field: bool = False) -> DiophSystem:
    """Collapse to one clause holding one equation.

    A conjunction becomes a sum of squares and a disjunction a product,
    which preserves solutions over a formally real field such as Q(x).
    ``over_field=True`` first rewrites each ``f != 0`` as ``h*f - 1 = 0``
    with a fresh ``h``; otherwise a NonZero constraint makes the
    collapse impossible.
    """
    if len(sys.clauses) == 1 and len(sys.clauses[0].eqs) == 1 and not sys.clauses[0].nonzero:
        return sys
    taken = set(sys.variables)
    fresh: list[str] = []
    for i, cl in enumerate(sys.clauses):
        if cl.nonzero and not over_field:
            raise NotCollapsible("NonZero constraint without a unit rewrite")
        for k in range(len(cl.nonzero)):
            fresh.append(_fresh(f"h_{i}_{k}", taken))
    new_vars = sys.variables + tuple(fresh)
    product = None
    it = iter(fresh)
    for cl in sys.clauses:
        eqs = [f.rebase(new_vars) for f in cl.eqs]
        for g in cl.nonzero:
            h = MultiPoly.var(next(it), new_vars)
            eqs.append(h * g.rebase(new_vars) - 1)
        combined = eqs[0] if len(eqs) == 1 else _sum_of_squares(eqs)
        product = combined if product is None else product * combined
    exists = sys.exists + tuple(fresh)
    return DiophSystem(sys.params, exists, (Clause([product]),), sys.coeff_basis)


def _sum_of_squares(fs: Sequence[MultiPoly]) -> MultiPoly:
    acc = fs[0] * fs[0]
    for f in fs[1:]:
        acc = acc + f * f
    return acc


def model_criterion_transform(
    int_sys: Sequence[MultiPoly],
    delta_def: DiophSystem,
    ideal_gens: Sequence[RatFunc],
) -> DiophSystem:
    """System for B = {t in Delta^m : f_i(t) in I} from integer polynomials f_i.

    ``delta_def`` defines Delta with one parameter.  Membership f_i(t) in I
    is written f_i(t) = sum_j lam_ij g_j with fresh unknowns lam_ij.
    Delta's unknowns are renamed ``{name}__t{i}`` for coordinate i and its
    disjunctions are distributed over the coordinates.
    """
    if not ideal_gens:
        raise EmptyGenerators("ideal generators must be nonempty")
    if len(delta_def.params) != 1:
        raise ArityMismatch("the definition of Delta must have exactly one parameter")
    if not int_sys:
        raise ValueError("at least one polynomial f_i is needed")
    params = int_sys[0].variables
    for f in int_sys:
        if f.variables != params:
            raise ArityMismatch("all f_i must use the same variables")
        for c in f.coefficients():
            if not _is_integer(c):
                raise ValueError(f"f_i must have integer coefficients, found {c}")
    m = len(params)
    taken = set(params)
    renamed = [
        {v: _fresh(f"{v}__t{i}", taken) for v in delta_def.exists} for i in range(m)
    ]
    lams = [[_fresh(f"lam_{i}_{j}", taken) for j in range(len(ideal_gens))] for i in range(len(int_sys))]
    exists = tuple(name for r in renamed for name in r.values()) + tuple(
        name for row in lams for name in row
    )
    new_vars = params + exists

    def instance(i: int, cl: Clause) -> list[tuple[str, MultiPoly]]:
        mapping = {delta_def.params[0]: MultiPoly.var(params[i], new_vars)}
        for v, nv in renamed[i].items():
            mapping[v] = MultiPoly.var(nv, new_vars)
        return [("eq", f.substitute(mapping, new_vars)) for f in cl.eqs] + [
            ("nz", g.substitute(mapping, new_vars)) for g in cl.nonzero
        ]

    ideal_eqs = []
    for i, f in enumerate(int_sys):
        rhs = MultiPoly(new_vars)
        for j, g in enumerate(ideal_gens):
            rhs = rhs + MultiPoly.var(lams[i][j], new_vars) * _coerce(g)
        ideal_eqs.append(f.rebase(new_vars) - rhs)

    clauses = []
    for choice in itertools.product(range(len(delta_def.clauses)), repeat=m):
        eqs, nz = [], []
        for i, ci in enumerate(choice):
            for kind, poly in instance(i, delta_def.clauses[ci]):
                (eqs if kind == "eq" else nz).append(poly)
        clauses.append(Clause(eqs + ideal_eqs, nz))
    basis = tuple(delta_def.coeff_basis) + tuple(_coerce(g) for g in ideal_gens)
    return DiophSystem(params, exists, tuple(clauses), basis)


def recover_integer_solution(ring: HolomorphyRing, candidate: Sequence) -> list[int]:
    """Integers congruent to the coordinates of ``candidate`` modulo I."""
    out = []
    for t in candidate:
        n = reduce_to_integer(ring, _coerce(t))
        if n is None:
            raise NotInZPlusI(f"{t} is not congruent to an integer modulo I")
        out.append(n)
    return out


# -- restriction of scalars ----------------------------------------------------------


def _validate_algebra(table, one) -> tuple[list, list]:
    m = len(one)
    if m == 0:
        raise BadAlgebra("rank must be positive")
    try:
        T = [[[_coerce(table[i][j][k]) for k in range(m)] for j in range(m)] for i in range(m)]
    except (IndexError, TypeError) as exc:
        raise BadAlgebra(f"multiplication table must be {m}x{m}x{m}") from exc
    if len(table) != m or any(len(r) != m or any(len(c) != m for c in r) for r in table):
        raise BadAlgebra(f"multiplication table must be {m}x{m}x{m}")
    e = [_coerce(c) for c in one]

    def mul(u, v):
        out = [RatFunc(0)] * m
        for i in range(m):
            if u[i].is_zero():
                continue
            for j in range(m):
                if v[j].is_zero():
                    continue
                s = u[i] * v[j]
                for k in range(m):
                    if not T[i][j][k].is_zero():
                        out[k] = out[k] + s * T[i][j][k]
        return out

    basis = [[RatFunc(int(i == k)) for k in range(m)] for i in range(m)]
    for i in range(m):
        if mul(e, basis[i]) != basis[i]:
            raise BadAlgebra(f"the given unit does not fix basis element {i}")
        for j in range(m):
            if T[i][j] != T[j][i]:
                raise BadAlgebra(f"table is not commutative at ({i}, {j})")
            for k in range(m):
                if mul(mul(basis[i], basis[j]), basis[k]) != mul(basis[i], mul(basis[j], basis[k])):
                    raise BadAlgebra(f"table is not associative at ({i}, {j}, {k})")
    return T, e


def weil_restriction(
    sys: DiophSystem,
    mult_table,
    one_coords: Sequence,
    base_params: bool = False,
) -> DiophSystem:
    """Rewrite a system over a rank-m algebra R' = R b_0 + ... + R b_{m-1} as one over R.

    Each variable v becomes v_0, ..., v_{m-1}; an equation splits into its m
    coordinate equations and ``f != 0`` into the disjunction of its
    coordinates being nonzero.  With ``base_params`` the parameters stay
    single variables ranging over R.
    """
    T, e = _validate_algebra(mult_table, one_coords)
    m = len(e)

    def split(v):
        return [f"{v}_{k}" for k in range(m)] if m > 1 else [v]

    new_params = sys.params if base_params else tuple(n for v in sys.params for n in split(v))
    new_exists = tuple(n for v in sys.exists for n in split(v))
    new_vars = new_params + new_exists
    if len(set(new_vars)) != len(new_vars):
        raise ValueError("split variable names collide")

    zero = MultiPoly(new_vars)

    def embed_scalar(c: RatFunc):
        return [MultiPoly.const(c * e[k], new_vars) for k in range(m)]

    def vmul(u, v):
        out = [zero] * m
        for i in range(m):
            if u[i].is_zero():
                continue
            for j in range(m):
                if v[j].is_zero():
                    continue
                s = u[i] * v[j]
                for k in range(m):
                    if not T[i][j][k].is_zero():
                        out[k] = out[k] + s * T[i][j][k]
        return out

    def vadd(u, v):
        return [a + b for a, b in zip(u, v)]

    coords = {}
    for v in sys.params:
        coords[v] = (
            [MultiPoly.var(v, new_vars) * e[k] for k in range(m)]
            if base_params
            else [MultiPoly.var(n, new_vars) for n in split(v)]
        )
    for v in sys.exists:
        coords[v] = [MultiPoly.var(n, new_vars) for n in split(v)]

    def expand(f: MultiPoly):
        acc = [zero] * m
        powers: dict = {}
        for exps, c in f.terms.items():
            t = embed_scalar(c)
            for var, ex in zip(f.variables, exps):
                if ex:
                    if (var, ex) not in powers:
                        p = embed_scalar(RatFunc(1))
                        for _ in range(ex):
                            p = vmul(p, coords[var])
                        powers[(var, ex)] = p
                    t = vmul(t, powers[(var, ex)])
            acc = vadd(acc, t)
        return acc

    clauses = []
    for cl in sys.clauses:
        eqs = [comp for f in cl.eqs for comp in expand(f) if not comp.is_zero()]
        nz_options = [expand(g) for g in cl.nonzero]
        for pick in itertools.product(range(m), repeat=len(nz_options)):
            nz = [opt[k] for opt, k in zip(nz_options, pick)]
            if any(g.is_zero() for g in nz):
                continue
            if not eqs and not nz:
                # every equation expanded to 0 = 0
                eqs_here = [zero]
            else:
                eqs_here = eqs
            clauses.append(Clause(eqs_here, nz))
    if not clauses:
        # every NonZero choice was identically zero: unsatisfiable
        one = MultiPoly.const(1, new_vars)
        clauses.append(Clause([one], []))
    basis = tuple(sys.coeff_basis) + tuple(c for row in T for col in row for c in col) + tuple(e)
    return DiophSystem(new_params, new_exists, tuple(clauses), basis)


def restrict_assignment(values: Mapping[str, Sequence], m: int) -> dict[str, RatFunc]:
    """Coordinates of an R'-assignment as an R-assignment for weil_restriction's names."""
    out = {}
    for v, cs in values.items():
        if m == 1:
            out[v] = _coerce(cs[0])
        else:
            for k in range(m):
                out[f"{v}_{k}"] = _coerce(cs[k])
    return out
