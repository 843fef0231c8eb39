import json
import subprocess
import sys

from holodioph.arith import RatFunc
from holodioph.arith.text import ratfunc_to_obj
from holodioph.cli import main
from holodioph.curve import default_curve, scalar_mul
from holodioph.dioph import Clause, DiophSystem, MultiPoly
from holodioph.rings import HolomorphyRing, ring_to_obj
from holodioph.witness import emit_system

E = default_curve()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mul_point_n2(capsys):
    code, out, _ = run(capsys, "mul-point", "--n", "2")
    pt = scalar_mul(E, 2, E.base_point)
    assert code == 0
    assert out == f"x_2 = {pt.X}\ny_2 = {pt.Y}\n"


def test_denef_sweep_max10_verify(capsys):
    code, out, _ = run(capsys, "denef-sweep", "--max", "10", "--verify")
    rows = out.strip().splitlines()[1:]
    assert code == 0
    assert len(rows) == 10
    assert all(r.split()[-1] == "pass" for r in rows)

    code, out, _ = run(capsys, "denef-sweep", "--max", "10", "--verify", "--json")
    obj = json.loads(out)
    assert obj["all_passed"] and [r["n"] for r in obj["rows"]] == list(range(1, 11))


def test_denef_sweep_pool_matches_serial(capsys):
    argv = ["denef-sweep", "--max", "6", "--negative", "--verify", "--json"]
    _, serial, _ = run(capsys, *argv)
    _, pooled, _ = run(capsys, *argv, "--jobs", "3")
    assert serial == pooled


def test_check_witness_half_rejected(capsys, tmp_path):
    w = tmp_path / "w.json"
    assert run(capsys, "build-witness", "--n", "3", "--out", str(w))[0] == 0
    code, out, _ = run(capsys, "check-witness", "--xi", "1/2", "--file", str(w))
    assert code == 1
    assert "NotInZPlusI" in out
    code, out, _ = run(capsys, "check-witness", "--xi", "1/2", "--file", str(w), "--json")
    assert json.loads(out)["reason"] == "NotInZPlusI"


def test_check_witness_accepts_and_xi_override(capsys, tmp_path):
    w = tmp_path / "w.json"
    run(capsys, "build-witness", "--n", "-2", "--out", str(w))
    code, out, _ = run(capsys, "check-witness", "--file", str(w), "--json")
    assert code == 0 and json.loads(out) == {"n": -2, "result": "accept"}
    code, out, _ = run(capsys, "check-witness", "--file", str(w), "--xi", "-2 + x^2/(3 - x)")
    assert code == 0 and out == "accept n = -2\n"
    code, out, _ = run(capsys, "check-witness", "--file", str(w), "--xi", "3")
    assert code == 1


def test_malformed_inputs_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check-witness", "--file", str(bad))[0] == 2
    bad.write_text(json.dumps({"u": "1"}))
    assert run(capsys, "check-witness", "--file", str(bad))[0] == 2
    assert run(capsys, "check-witness", "--file", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "classify", "--xi", "1/(")[0] == 2
    assert run(capsys, "mul-point")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "recognize", "--point", '{"X": 1}')[0] == 2


def test_witness_without_xi_is_malformed(capsys, tmp_path):
    w = tmp_path / "w.json"
    obj = json.loads(run(capsys, "build-witness", "--n", "2")[1])
    del obj["xi"]
    w.write_text(json.dumps(obj))
    assert run(capsys, "check-witness", "--file", str(w))[0] == 2


def test_config_curve_and_ring(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"curve": [1, 0, 1, 3], "ring": ring_to_obj(HolomorphyRing.polynomial_ring())}))
    code, out, _ = run(capsys, "classify", "--xi", "5 + 7*x", "--config", str(cfg), "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "IntegerPart"
    assert json.loads(out)["n"] == 5
    # 1/(1+x) is not in Q[x]
    assert run(capsys, "classify", "--xi", "1/(1+x)", "--config", str(cfg))[0] == 1

    cfg.write_text(json.dumps({"curve": [1, 0, 1, 0]}))  # j = 1728, CM
    code, _, err = run(capsys, "info", "--config", str(cfg))
    assert code == 2 and "CM" in err


def test_sweep_bounds_from_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"sweep": {"min": 2, "max": 4}}))
    code, out, _ = run(capsys, "denef-sweep", "--config", str(cfg), "--json")
    assert [r["n"] for r in json.loads(out)["rows"]] == [2, 3, 4]
    # flags override the file
    code, out, _ = run(capsys, "denef-sweep", "--config", str(cfg), "--max", "3", "--json")
    assert [r["n"] for r in json.loads(out)["rows"]] == [2, 3]


def test_classify_verdicts(capsys):
    assert run(capsys, "classify", "--xi", "x/(1+x)")[1] == "x/(x + 1): InIdeal\n"
    code, out, _ = run(capsys, "classify", "--xi", "1/2")
    assert code == 0 and out.endswith("NotInZPlusI\n")
    code, out, _ = run(capsys, "classify", "--xi", "4 - x", "--json")
    assert json.loads(out)["n"] == 4


def test_seeded_classify_is_reproducible(capsys):
    argv = ["classify", "--xi", "2", "--random", "5", "--json"]
    a = run(capsys, *argv, "--seed", "11")[1]
    b = run(capsys, *argv, "--seed", "11")[1]
    c = run(capsys, *argv, "--seed", "12")[1]
    assert a == b and a != c
    results = json.loads(a)["results"]
    assert len(results) == 6
    assert all(r["verdict"] == "IntegerPart" and r["n"] == 2 for r in results)


def test_recognize_roundtrip_from_mul_point(capsys, tmp_path):
    _, out, _ = run(capsys, "mul-point", "--n", "-4", "--json")
    pt = json.loads(out)["point"]
    code, out, _ = run(capsys, "recognize", "--point", json.dumps(pt))
    assert code == 0 and out == "point = [-4]P\n"
    f = tmp_path / "p.json"
    f.write_text(json.dumps(pt))
    assert json.loads(run(capsys, "recognize", "--point", str(f), "--json")[1]) == {"n": -4}
    off = {"X": pt["X"], "Y": ratfunc_to_obj(RatFunc(7))}
    code, out, _ = run(capsys, "recognize", "--point", json.dumps(off))
    assert code == 1 and "NotOnCurve" in out


def test_emit_system_roundtrip(capsys):
    code, out, _ = run(capsys, "emit-system")
    assert code == 0
    assert out == emit_system(E, HolomorphyRing.local_at_zero()).to_json() + "\n"
    assert DiophSystem.from_json(out).to_json() + "\n" == out
    code, out, _ = run(capsys, "emit-system", "--xi", "3")
    assert DiophSystem.from_json(out).params == ()


def test_reduce_single_eq(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text(run(capsys, "emit-system")[1])
    code, out, _ = run(capsys, "reduce", "--mode", "single-eq", "--system", str(f))
    assert code == 1 and "NotCollapsible" in out
    code, out, _ = run(capsys, "reduce", "--mode", "single-eq", "--system", str(f), "--over-field")
    sysm = DiophSystem.from_json(out)
    assert code == 0 and len(sysm.clauses) == 1 and len(sysm.clauses[0].eqs) == 1


def test_reduce_weil_sqrt2(capsys, tmp_path):
    Z = MultiPoly.var("Z", ("Z",))
    s = tmp_path / "s.json"
    s.write_text(DiophSystem((), ("Z",), (Clause([Z * Z - 2]),)).to_json())
    one = ratfunc_to_obj(RatFunc(1))
    zero = ratfunc_to_obj(RatFunc(0))
    two = ratfunc_to_obj(RatFunc(2))
    alg = tmp_path / "a.json"
    alg.write_text(json.dumps({"table": [[[one, zero], [zero, one]], [[zero, one], [two, zero]]], "one": [one, zero]}))
    code, out, _ = run(capsys, "reduce", "--mode", "weil", "--system", str(s), "--algebra", str(alg))
    res = DiophSystem.from_json(out)
    assert code == 0 and res.exists == ("Z_0", "Z_1")
    assert res.clauses[0].holds({"Z_0": RatFunc(0), "Z_1": RatFunc(1)})
    alg.write_text(json.dumps({"table": [[[one, zero], [zero, one]], [[zero, zero], [zero, one]]], "one": [one, zero]}))
    code, out, _ = run(capsys, "reduce", "--mode", "weil", "--system", str(s), "--algebra", str(alg))
    assert code == 1 and "BadAlgebra" in out


def test_reduce_model_criterion(capsys, tmp_path):
    names = ("t1", "t2")
    t1, t2 = MultiPoly.var("t1", names), MultiPoly.var("t2", names)
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"vars": list(names), "polys": [(t1 * t2 - 6).to_obj()]}))
    code, out, _ = run(capsys, "reduce", "--mode", "model-criterion", "--polys", str(p))
    res = DiophSystem.from_json(out)
    assert code == 0 and res.params == names
    assert len(res.clauses) == 4  # two clauses of the Z + I system per coordinate
    assert run(capsys, "reduce", "--mode", "model-criterion")[0] == 2


def test_identical_invocations_identical_bytes():
    cmds = [
        ["mul-point", "--n", "5", "--json"],
        ["denef-sweep", "--max", "5", "--verify"],
        ["emit-system"],
        ["build-witness", "--n", "4"],
        ["classify", "--xi", "1 + x", "--random", "3", "--seed", "2"],
        ["info", "--json"],
    ]
    for argv in cmds:
        outs = [
            subprocess.run(
                [sys.executable, "-m", "holodioph", *argv], capture_output=True, check=True
            ).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1], argv
        assert outs[0]


def test_build_witness_routes_agree_on_check(capsys, tmp_path):
    for route in ("ring", "polynomial"):
        w = tmp_path / f"{route}.json"
        run(capsys, "build-witness", "--n", "3", "--bezout", route, "--xi", "3 + x", "--out", str(w))
        assert run(capsys, "check-witness", "--file", str(w))[0] == 0
