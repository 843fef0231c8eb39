"""Command-line interface.

Exit codes: 0 success, 1 semantic rejection, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .arith import Poly, RatFunc
from .arith.text import dumps, parse_ratfunc, ratfunc_from_obj, ratfunc_to_obj
from .curve import (
    TwistedCurve,
    curve_from_obj,
    curve_to_obj,
    default_curve,
    point_from_obj,
    point_to_obj,
    recognize_multiple,
    scalar_mul,
)
from .denef import coprime_facts, denef_term, verify_order_lemma
from .dioph import (
    DiophSystem,
    MultiPoly,
    model_criterion_transform,
    to_single_equation,
    weil_restriction,
)
from .errors import ArityMismatch, HolodiophError, ParseError
from .rings import HolomorphyRing, ideal_generators, ring_from_obj, ring_to_obj
from .witness import (
    build_witness,
    check_witness,
    classify_xi,
    emit_system,
    witness_from_json,
    witness_to_obj,
)

EXIT_OK, EXIT_REJECT, EXIT_MALFORMED = 0, 1, 2


class Malformed(Exception):
    pass


class Rejected(Exception):
    def __init__(self, reason: str, payload: Optional[dict] = None):
        super().__init__(reason)
        self.reason = reason
        self.payload = payload or {}


# -- config ---------------------------------------------------------------------


class Context:
    def __init__(self, args):
        cfg = {}
        if args.config:
            cfg = _read_json(args.config)
            if not isinstance(cfg, dict):
                raise Malformed("config must be a JSON object")
        try:
            self.curve: TwistedCurve = (
                curve_from_obj(cfg["curve"]) if "curve" in cfg else default_curve()
            )
            self.ring: HolomorphyRing = (
                ring_from_obj(cfg["ring"]) if "ring" in cfg else HolomorphyRing.local_at_zero()
            )
        except HolodiophError as exc:
            raise Malformed(f"invalid config: {exc}") from exc
        self.sweep = cfg.get("sweep", {})
        self.json = args.json or bool(cfg.get("json", False))
        self.seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        self.jobs = args.jobs


def _read_text(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise Malformed(f"cannot read {path}: {exc}") from exc


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise Malformed(f"{path} is not valid JSON: {exc}") from exc


def _ratfunc_arg(text: str) -> RatFunc:
    text = text.strip()
    if text.startswith("{"):
        return ratfunc_from_obj(json.loads(text))
    return parse_ratfunc(text)


def _emit(ctx: Context, obj, human: str):
    sys.stdout.write(dumps(obj) + "\n" if ctx.json else human.rstrip("\n") + "\n")


# -- commands -------------------------------------------------------------------


def cmd_mul_point(ctx: Context, args) -> int:
    E = ctx.curve
    pt = scalar_mul(E, args.n, E.base_point)
    obj = {"n": args.n, "point": point_to_obj(pt)}
    if pt.is_infinity:
        human = f"[{args.n}]P = infinity"
    else:
        human = f"x_{args.n} = {pt.X}\ny_{args.n} = {pt.Y}"
    _emit(ctx, obj, human)
    return EXIT_OK


def _sweep_row(E: TwistedCurve, n: int, verify: bool) -> dict:
    term = denef_term(E, n)
    row = {"n": n, "deg_alpha": int(term.alpha_n.degree), "deg_beta": int(term.beta_n.degree)}
    if verify:
        rep = verify_order_lemma(term)
        facts = coprime_facts(term)
        row["ord"] = rep.row()["ord"]
        row["pass"] = rep.passed and facts.passed
    return row


def _sweep_worker(payload):
    coeffs, n, verify = payload
    return _sweep_row(curve_from_obj(coeffs), n, verify)


def cmd_denef_sweep(ctx: Context, args) -> int:
    lo = args.min if args.min is not None else ctx.sweep.get("min", 1)
    hi = args.max if args.max is not None else ctx.sweep.get("max", 10)
    if lo < 1 or hi < lo:
        raise Malformed("need 1 <= --min <= --max")
    ns = list(range(lo, hi + 1))
    if args.negative:
        ns += [-n for n in ns]
    if ctx.jobs > 1:
        coeffs = curve_to_obj(ctx.curve)
        with ProcessPoolExecutor(max_workers=ctx.jobs) as pool:
            rows = list(pool.map(_sweep_worker, [(coeffs, n, args.verify) for n in ns]))
    else:
        rows = [_sweep_row(ctx.curve, n, args.verify) for n in ns]
    ok = all(r.get("pass", True) for r in rows)
    lines = []
    header = f"{'n':>5} {'deg alpha':>10} {'deg beta':>9}"
    if args.verify:
        header += f" {'ord':>5} {'result':>7}"
    lines.append(header)
    for r in rows:
        line = f"{r['n']:>5} {r['deg_alpha']:>10} {r['deg_beta']:>9}"
        if args.verify:
            line += f" {str(r['ord']):>5} {'pass' if r['pass'] else 'FAIL':>7}"
        lines.append(line)
    _emit(ctx, {"rows": rows, "all_passed": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_REJECT


def cmd_emit_system(ctx: Context, args) -> int:
    system = emit_system(ctx.curve, ctx.ring)
    if args.xi is not None:
        from .dioph import specialize

        system = specialize(system, [_ratfunc_arg(args.xi)])
    # the system is itself JSON; both modes print the canonical form
    sys.stdout.write(system.to_json() + "\n")
    return EXIT_OK


def _load_witness(path: str):
    try:
        return witness_from_json(_read_text(path))
    except ParseError as exc:
        raise Malformed(str(exc)) from exc


def cmd_check_witness(ctx: Context, args) -> int:
    wit, file_xi = _load_witness(args.file)
    xi = _ratfunc_arg(args.xi) if args.xi is not None else file_xi
    if xi is None:
        raise Malformed("no xi given on the command line or in the witness file")
    res = check_witness(ctx.curve, ctx.ring, xi, wit)
    if res.accepted:
        _emit(ctx, {"result": "accept", "n": res.n}, f"accept n = {res.n}")
        return EXIT_OK
    raise Rejected(res.reason, {"result": "reject", "reason": res.reason, "detail": res.detail})


def cmd_build_witness(ctx: Context, args) -> int:
    wit = build_witness(ctx.curve, ctx.ring, args.n, bezout=args.bezout)
    xi = _ratfunc_arg(args.xi) if args.xi is not None else RatFunc(args.n)
    text = dumps(witness_to_obj(wit, xi))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        _emit(ctx, {"written": args.out, "n": args.n}, f"witness for n = {args.n} written to {args.out}")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_classify(ctx: Context, args) -> int:
    xi = _ratfunc_arg(args.xi)
    targets = [xi]
    if args.random:
        rng = random.Random(ctx.seed)
        x = RatFunc.x()
        for _ in range(args.random):
            num = Poly([rng.randint(-9, 9) for _ in range(rng.randint(1, 3))])
            den = Poly([rng.randint(1, 9)] + [rng.randint(-9, 9) for _ in range(rng.randint(0, 2))])
            targets.append(xi + x * RatFunc(num, den))
    results = []
    lines = []
    for t in targets:
        res = classify_xi(ctx.curve, ctx.ring, t)
        results.append({"xi": ratfunc_to_obj(t), "verdict": res.verdict, "n": res.n})
        suffix = f" n = {res.n}" if res.n is not None else ""
        lines.append(f"{t}: {res.verdict}{suffix}")
    if len(targets) == 1:
        obj = classify_xi(ctx.curve, ctx.ring, xi).to_obj()
    else:
        obj = {"results": results}
    _emit(ctx, obj, "\n".join(lines))
    return EXIT_OK


def _load_system(path: str) -> DiophSystem:
    try:
        return DiophSystem.from_json(_read_text(path))
    except (ParseError, ArityMismatch) as exc:
        raise Malformed(str(exc)) from exc


def cmd_reduce(ctx: Context, args) -> int:
    if args.mode == "single-eq":
        if not args.system:
            raise Malformed("--system is required for single-eq")
        out = to_single_equation(_load_system(args.system), over_field=args.over_field)
    elif args.mode == "weil":
        if not args.system or not args.algebra:
            raise Malformed("--system and --algebra are required for weil")
        alg = _read_json(args.algebra)
        if not isinstance(alg, dict) or set(alg) != {"table", "one"}:
            raise Malformed("algebra file needs table and one")
        try:
            table = [[[ratfunc_from_obj(c) for c in col] for col in row] for row in alg["table"]]
            one = [ratfunc_from_obj(c) for c in alg["one"]]
        except (TypeError, ParseError) as exc:
            raise Malformed(f"bad algebra entries: {exc}") from exc
        out = weil_restriction(_load_system(args.system), table, one, base_params=args.base_params)
    else:
        if not args.polys:
            raise Malformed("--polys is required for model-criterion")
        data = _read_json(args.polys)
        if not isinstance(data, dict) or set(data) != {"vars", "polys"}:
            raise Malformed("polys file needs vars and polys")
        try:
            names = tuple(data["vars"])
            polys = [MultiPoly.from_obj(p, names) for p in data["polys"]]
        except (TypeError, ParseError, ArityMismatch) as exc:
            raise Malformed(str(exc)) from exc
        delta = _load_system(args.delta) if args.delta else emit_system(ctx.curve, ctx.ring)
        out = model_criterion_transform(polys, delta, ideal_generators(ctx.ring))
    sys.stdout.write(out.to_json() + "\n")
    return EXIT_OK


def cmd_recognize(ctx: Context, args) -> int:
    text = args.point
    if not text.lstrip().startswith(("{", '"')):
        text = _read_text(text)
    try:
        pt = point_from_obj(json.loads(text))
    except json.JSONDecodeError as exc:
        raise Malformed(f"point is not valid JSON: {exc}") from exc
    n = recognize_multiple(ctx.curve, pt)
    _emit(ctx, {"n": n}, f"point = [{n}]P")
    return EXIT_OK


def cmd_info(ctx: Context, args) -> int:
    E = ctx.curve
    obj = {
        "curve": curve_to_obj(E),
        "discriminant": str(E.discriminant),
        "j_invariant": str(E.j_invariant),
        "has_cm": E.has_cm,
        "irreducible": E.irreducible,
        "ring": ring_to_obj(ctx.ring),
    }
    human = "\n".join(
        [
            f"F = {E.F}",
            f"discriminant = {E.discriminant}",
            f"j = {E.j_invariant}",
            f"CM: {'yes' if E.has_cm else 'no'}",
            f"irreducible: {'yes' if E.irreducible else 'no'}",
            f"ring: {ctx.ring}",
        ]
    )
    _emit(ctx, obj, human)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized options")
    common.add_argument("--config", help="JSON config with curve, ring, sweep")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    parser = argparse.ArgumentParser(
        prog="holodioph",
        description="Exact computations on F(1/x) Y^2 = F(X) over Q(x) and Diophantine witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul-point", parents=[common], help="coordinates of [n]P")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_mul_point)

    p = sub.add_parser("denef-sweep", parents=[common], help="alpha_n, beta_n table")
    p.add_argument("--min", type=int, default=None)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="check the order and coprimality facts")
    p.add_argument("--negative", action="store_true", help="also sweep -n")
    p.set_defaults(func=cmd_denef_sweep)

    p = sub.add_parser("emit-system", parents=[common], help="system defining Z + I")
    p.add_argument("--xi", help="specialize the parameter")
    p.set_defaults(func=cmd_emit_system)

    p = sub.add_parser("check-witness", parents=[common], help="verify a witness file")
    p.add_argument("--file", required=True)
    p.add_argument("--xi", help="overrides xi stored in the file")
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("build-witness", parents=[common], help="witness for xi = n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--xi", help="xi to store with the witness (default n)")
    p.add_argument("--bezout", choices=["ring", "polynomial"], default="ring")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_build_witness)

    p = sub.add_parser("classify", parents=[common], help="InIdeal, IntegerPart or NotInZPlusI")
    p.add_argument("--xi", required=True)
    p.add_argument("--random", type=int, default=0, help="also classify this many seeded xi + x*r")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", parents=[common], help="transform a system")
    p.add_argument("--mode", choices=["single-eq", "model-criterion", "weil"], required=True)
    p.add_argument("--system", help="system JSON (single-eq, weil)")
    p.add_argument("--over-field", action="store_true", help="rewrite f != 0 as h*f - 1 = 0")
    p.add_argument("--algebra", help="JSON {table, one} (weil)")
    p.add_argument("--base-params", action="store_true", help="keep parameters in the base ring (weil)")
    p.add_argument("--polys", help="JSON {vars, polys} of integer polynomials (model-criterion)")
    p.add_argument("--delta", help="system defining Delta (default: the Z + I system)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("recognize", parents=[common], help="n with point = [n]P")
    p.add_argument("--point", required=True, help='JSON {"X": ..., "Y": ...} or a file')
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("info", parents=[common], help="curve invariants and ring")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        ctx = Context(args)
        return args.func(ctx, args)
    except Rejected as exc:
        if args.json:
            sys.stdout.write(dumps(exc.payload) + "\n")
        else:
            detail = exc.payload.get("detail", "")
            sys.stdout.write(f"reject: {exc.reason}" + (f" ({detail})" if detail else "") + "\n")
        return EXIT_REJECT
    except (Malformed, ParseError, ArityMismatch, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except HolodiophError as exc:
        name = type(exc).__name__
        if args.json:
            sys.stdout.write(dumps({"result": "reject", "reason": name, "detail": str(exc)}) + "\n")
        else:
            sys.stdout.write(f"reject: {name} ({exc})\n")
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
