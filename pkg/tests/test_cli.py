import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgroups.cli import Calculator, DomainError, ParseError, main, parse, run_calc
from sgroups.cli.demos import zq_enumeration
from sgroups.cli.parser import parse_interval_text, tokenize
from sgroups.models import ModelDescriptor
from sgroups.regions import Interval

PP = ModelDescriptor("pp", Interval(-1, 1))
PP03 = ModelDescriptor("pp", Interval(0, 3))


def shape(node):
    """Compact tree rendering used to pin precedence."""
    if node.op == "num":
        return str(node.args[0])
    if node.op == "name":
        return node.args[0]
    if node.op == "interval":
        return "empty" if node.args[0] is None else f"({node.args[0]},{node.args[1]})"
    if node.op == "D":
        return f"D{node.args[0]}[{shape(node.args[1])}]"
    if node.op == "pow":
        return f"pow[{shape(node.args[0])},{node.args[1]}]"
    if node.op == "call":
        return f"{node.args[0]}({','.join(shape(a) for a in node.args[1])})"
    return f"{node.op}[{','.join(shape(a) for a in node.args)}]"


# parser


@pytest.mark.parametrize("text,tree", [
    ("x + 2*x", "add[x,mul[2,x]]"),
    ("x - x - x", "sub[sub[x,x],x]"),
    ("-x*2", "mul[neg[x],2]"),
    ("D^1 x + 1", "add[D1[x],1]"),
    ("D^2 x|(0,1)", "D2[restrict[x,(0,1)]]"),
    ("-D^1 abs", "neg[D1[abs]]"),
    ("x^2*3", "mul[pow[x,2],3]"),
    ("2*D^1 abs", "mul[2,D1[abs]]"),
    ("abs(x-1)|(1/2,1)", "restrict[abs(sub[x,1]),(1/2,1)]"),
    ("(x+1)|empty", "restrict[add[x,1],empty]"),
    ("F2(1) + F3(1)", "add[F2(1),F3(1)]"),
])
def test_precedence(text, tree):
    assert shape(parse(text)) == tree


@pytest.mark.parametrize("text,pos", [("", 0), ("x +", 3), ("D^1(abs", 7), ("x $ 1", 2),
                                      ("x|(1,0)", 2), ("D^x abs", 2), ("x^1/2", 2)])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos


def test_tables_and_intervals():
    n = parse("glue{(0,2): x, (1,3): 1}")
    assert n.op == "glue" and len(n.args) == 2
    assert parse_interval_text("(-1,1/2)") == (Fraction(-1), Fraction(1, 2))
    assert parse_interval_text("empty") is None
    assert [t.kind for t in tokenize("D^2 7/3")] == ["deriv", "num", "num", "end"]


@given(st.integers(0, 50), st.integers(1, 20), st.integers(0, 50), st.integers(1, 20))
def test_int_calculator_is_fraction_arithmetic(a, b, c, d):
    res = run_calc(ModelDescriptor("int"), f"{a}/{b} - {c}/{d}")
    v = res.payload["value"]
    got = Fraction(v) if res.payload["kind"] == "individual" else Fraction(v["m"], v["n"])
    assert got == Fraction(a, b) - Fraction(c, d)


# calculator


@pytest.mark.parametrize("model,text,out", [
    (PP, "D^1(abs)", "D^1[|x|] (not a continuous function)"),
    (PP, "D^2(abs)|(0,1)", "0 (continuous function)"),
    (PP, "D^1(x*abs) - 2*abs", "0 (continuous function)"),
    (PP, "D^1(abs) - D^1(abs)", "0 (continuous function)"),
    (PP, "pw{(-1,0): -x, (0,1): x}", "|x| (continuous function)"),
    (PP03, "D^1(abs(x-1))|(1,2)", "1 (continuous function)"),
    (PP03, "saw(2)", "pw{(0,1): x; (1,2): -x + 2; (2,3): x - 2} (continuous function)"),
    (PP03, "x^2 + 1/2", "x^2 + 1/2 (continuous function)"),
    (ModelDescriptor("int"), "F2(1) + F3(1)", "[f_6, 5] ≙ 5/6"),
    (ModelDescriptor("int"), "1/2 + 1/3", "[f_6, 5] ≙ 5/6"),
])
def test_calc_examples(model, text, out):
    assert run_calc(model, text).text == out


def test_calc_payloads():
    r = run_calc(PP, "D^1(abs)")
    assert r.payload["kind"] == "class" and r.payload["value"]["order"] == 1
    assert run_calc(PP, "abs").payload["kind"] == "individual"
    g = run_calc(PP, "glue{(-1,1/2): x, (0,1): x}")
    assert g.payload["kind"] == "glued" and g.text.endswith("=  b(x (continuous function))")


@pytest.mark.parametrize("text", ["y", "abs|(0,2)", "pw{(-1,0): x, (0,1): x+1}", "saw(-1)"])
def test_domain_errors(text):
    with pytest.raises((DomainError, ValueError)):
        run_calc(PP, text)


def test_calculator_caches_extensions():
    c = Calculator(PP)
    assert c.ext(Interval(-1, 1)) is c.ext(Interval(-1, 1))


# commands and exit codes


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_calc_command(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "calc", "--model", "pp", "D^1(abs)", "--out", str(out))
    assert code == 0
    assert text.splitlines()[0] == "D^1[|x|] (not a continuous function)"
    assert json.loads(out.read_text())["value"]["order"] == 1


@pytest.mark.parametrize("argv,code", [
    (["calc", "--model", "pp", "D^1(abs"], 2),
    (["calc", "--model", "pp", "y"], 2),
    (["calc", "--model", "pp", "--domain", "(1,0)", "x"], 2),
    (["audit", "--spec", "/nonexistent/spec.json"], 2),
    (["audit", "--samples", "0"], 2),
    (["bogus"], 2),
    (["audit", "--level", "sspace", "--mutate", "strictness"], 2),
])
def test_input_errors_exit_2(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_audit_axioms_pass_and_mutation_fails(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, text, _ = run(capsys, "audit", "--model", "int", "--samples", "100", "--seed", "7", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["system"] == "2.20" and all(v["pass"] for v in rep["verdicts"])
    code, text, _ = run(capsys, "audit", "--model", "int", "--mutate", "strictness", "--out", str(out))
    assert code == 1 and "2.20/Axiom 4" in text
    rep = json.loads(out.read_text())
    assert any(v["axiom"] == "2.20/Axiom 4" and not v["pass"] for v in rep["verdicts"])


def test_audit_simplified_variant(capsys, tmp_path):
    out = tmp_path / "v.json"
    assert run(capsys, "audit", "--model", "int", "--variant", "simplified", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["system"] == "2.25"


@pytest.fixture
def pp5_spec(tmp_path):
    p = tmp_path / "pp5.json"
    p.write_text(json.dumps({"model": "pp", "regions": [[0, 3], [0, 2], [1, 3], [1, 2], "empty"],
                             "caps": {"max_order": 2, "max_degree": 2, "max_breaks": 2}}))
    return str(p)


@pytest.mark.parametrize("level", ["sspace", "tess1", "tess2"])
def test_audit_levels_on_five_regions(capsys, pp5_spec, level):
    assert run(capsys, "audit", "--spec", pp5_spec, "--level", level, "--samples", "10")[0] == 0


def test_audit_sgroup_identity_mutation(capsys):
    assert run(capsys, "audit", "--level", "sgroup", "--model", "int", "--samples", "30")[0] == 0
    assert run(capsys, "audit", "--level", "sgroup", "--model", "int", "--mutate", "identity")[0] == 1


def test_glue_command(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, text, _ = run(capsys, "glue", "--domain", "(0,3)", "(0,2)=D^2(abs(x-1))", "(1,3)=0",
                        "--out", str(out))
    assert code == 0 and "all overlaps agree" in text
    assert "b(D^2[|x - 1|] (not a continuous function))" in text
    assert json.loads(out.read_text())["kind"] == "glued"
    code, text, _ = run(capsys, "glue", "--domain", "(0,3)", "(0,2)=x", "(1,3)=x+1")
    assert code == 1
    assert "incoherent: the patches on (0,2) and (1,3) disagree" in text


def test_glue_from_spec(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"domain": "(0,3)", "patches": {"(0,2)": "x", "(1,3)": "x"}}))
    code, text, _ = run(capsys, "glue", "--spec", str(p))
    assert code == 0 and "glued:" in text
    assert run(capsys, "glue", "--domain", "(0,3)", "x")[0] == 2


def test_extend_command(capsys, tmp_path):
    assert run(capsys, "extend", "--model", "int", "--samples", "50")[0] == 0
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"model": "int", "flags": {"surjective": False}}))
    assert run(capsys, "extend", "--spec", str(p))[0] == 1
    p.write_text(json.dumps({"model": "int", "flags": {"bogus": True}}))
    assert run(capsys, "extend", "--spec", str(p))[0] == 2


# demos


def test_zq_enumeration():
    r = zq_enumeration()
    assert r["classes"] == 588 and r["values"] == 363 and r["targets"] == 185
    assert all(r[k] for k in ("well_defined", "injective", "surjective", "additive", "division"))


def test_demo_transcripts(capsys):
    code, text, _ = run(capsys, "demo", "zq")
    assert code == 0 and text.strip().endswith("isomorphism verified")
    code, text, _ = run(capsys, "demo", "delta")
    assert "D^2 f = D^2[|x - 1|]  (not a continuous function)" in text
    assert "D^1 (x - 1) on (1,2) = 1  (a continuous function)" in text
    assert text.strip().endswith("equals it: True")
    code, text, _ = run(capsys, "demo", "glue")
    assert "agree: True" in text and "= 2δ₁: True" in text
