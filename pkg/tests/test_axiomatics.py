import json
import random

import pytest

from sgroups.algebra import UsageError, audit_sgroup
from sgroups.axiomatics import (
    FULL, MUTATIONS, PARTNER, SIMPLIFIED, axiom_ids, candidate_from_bar, candidate_from_ext,
    candidate_from_tilde, check_full, check_simplified, check_system, mutate, mutate_sgroup,
)
from sgroups.extension import ExtSGroup
from sgroups.models import int_class_value, make_int_sgroup
from sgroups.spaces import generated_sspace
from sgroups.tess import build_bar, build_tilde

# samples per system family, kept small for the bar candidate
N = {"ext": 60, "tilde": 40, "bar": 25}

# mutation -> (full axiom, simplified axiom) the verdict must name
EXPECTED = {
    "ext": {
        "strictness": ("2.20/Axiom 4", "2.25/Axiom 4"),
        "closedness": ("2.20/Axiom 5", "2.25/Axiom 3"),
        "identity": ("2.20/Axiom 3(b)", "2.25/Axiom 2(a)"),
    },
    "tilde": {
        "strictness": ("5.12/Axiom 5", "5.17/Axiom 5"),
        "closedness": ("5.12/Axiom 6", "5.17/Axiom 4"),
        "restriction-composition": ("5.12/Axiom 7(7-3)", "5.17/Axiom 6(6-2)"),
        "bonding-composition": ("5.12/Axiom 7(7-4)", "5.17/Axiom 6(6-3)"),
        "identity": ("5.12/Axiom 4(4-2)", "5.17/Axiom 3(3-1)"),
    },
    "bar": {
        "strictness": ("5.21/Axiom 5", "5.28/Axiom 4"),
        "closedness": ("5.21/Axiom 7", "5.28/Axiom 6"),
        "restriction-composition": ("5.21/Axiom 6(6-3)", "5.28/Axiom 5(5-2)"),
        "bonding-composition": ("5.21/Axiom 6(6-4)", "5.28/Axiom 5(5-3)"),
        "glue-uniqueness": ("5.21/Axiom 8", "5.28/Axiom 7"),
        "identity": ("5.21/Axiom 4(4-2)", "5.28/Axiom 3(3-1)"),
    },
}
SYSTEM = {"ext": "2.20", "tilde": "5.12", "bar": "5.21"}


@pytest.fixture(scope="module")
def candidates(tilde5, bar5):
    return {
        "ext": candidate_from_ext(ExtSGroup(make_int_sgroup())),
        "tilde": candidate_from_tilde(tilde5),
        "bar": candidate_from_bar(bar5),
    }


@pytest.mark.parametrize("kind", ["ext", "tilde", "bar"])
def test_presented_candidates_pass_both_systems(candidates, kind):
    c, full = candidates[kind], SYSTEM[kind]
    a = check_full(c, full, N[kind], seed=1)
    b = check_simplified(c, PARTNER[full], N[kind], seed=1)
    assert a.passed, a.failing()
    assert b.passed, b.failing()
    assert [v.axiom for v in a.verdicts] == axiom_ids(full)
    assert [v.axiom for v in b.verdicts] == axiom_ids(PARTNER[full])


CASES = [(k, m) for k in EXPECTED for m in EXPECTED[k]]


@pytest.mark.parametrize("kind,mutation", CASES, ids=[f"{k}-{m}" for k, m in CASES])
def test_mutations_are_rejected_by_the_named_axiom(candidates, kind, mutation):
    c = mutate(candidates[kind], mutation)
    full = SYSTEM[kind]
    want_full, want_simple = EXPECTED[kind][mutation]
    a = check_system(c, full, N[kind], seed=1)
    b = check_system(c, PARTNER[full], N[kind], seed=1)
    assert want_full in a.failing()
    assert want_simple in b.failing()
    assert a[want_full].counterexample and b[want_simple].counterexample


def test_every_mutation_kind_is_covered():
    covered = {m for k in EXPECTED for m in EXPECTED[k]}
    assert covered == set(MUTATIONS)


def test_unknown_mutation(candidates):
    with pytest.raises(UsageError):
        mutate(candidates["ext"], "gravity")


@pytest.mark.parametrize("mutation", [None, "strictness", "closedness", "identity"])
def test_full_and_simplified_agree_on_the_rational_extension(candidates, mutation):
    c = candidates["ext"]
    c = mutate(c, mutation) if mutation else c
    for seed in range(3):
        assert check_system(c, "2.20", 40, seed).passed == check_system(c, "2.25", 40, seed).passed


def test_reports_are_deterministic(candidates):
    c = mutate(candidates["tilde"], "bonding-composition")
    a = check_system(c, "5.17", 30, seed=4).to_dict()
    b = check_system(c, "5.17", 30, seed=4).to_dict()
    assert a == b


def test_report_schema(candidates):
    rep = check_system(mutate(candidates["ext"], "strictness"), "2.20", 30, seed=2)
    d = json.loads(rep.to_json())
    assert set(d) == {"system", "seed", "samples", "verdicts"}
    assert d["system"] == "2.20" and d["seed"] == 2 and d["samples"] == 30
    for v in d["verdicts"]:
        assert {"axiom", "pass"} <= set(v)
        assert ("counterexample" in v) == (not v["pass"])
    assert "2.20/Axiom 4" in str(rep)


def test_shape_errors(candidates):
    with pytest.raises(UsageError):
        check_system(candidates["tilde"], "2.20")
    with pytest.raises(UsageError):
        check_full(candidates["ext"], "2.25")
    with pytest.raises(UsageError):
        check_simplified(candidates["ext"], "2.20")
    with pytest.raises(UsageError):
        check_system(candidates["ext"], "9.99")
    assert set(FULL) | set(SIMPLIFIED) == set(PARTNER)


def test_rational_extension_addition_is_fraction_addition(candidates):
    rep = check_simplified(candidates["ext"], "2.25", 200, seed=3)
    assert rep["2.25/derived addition"].passed
    c = candidates["ext"]
    rng = random.Random(3)
    region = c.regions[0]
    for _ in range(200):
        x, y = c.sample(region, rng), c.sample(region, rng)
        assert int_class_value(c.add(region, x, y)) == int_class_value(x) + int_class_value(y)


def test_generated_integer_tilde_and_bar_pass():
    t = build_tilde(generated_sspace(make_int_sgroup()), samples=10)
    assert check_system(candidate_from_tilde(t), "5.12", 40).passed
    assert check_system(candidate_from_bar(build_bar(t)), "5.28", 40).passed


def test_tilde_as_its_own_glued_candidate(tilde5):
    # the finite first extension turns out to glue, so the probe passes
    c = candidate_from_tilde(tilde5, with_glue=True)
    assert check_system(c, "5.21", 25, seed=1).passed
    assert check_system(c, "5.28", 25, seed=1).passed


def test_identity_mutation_at_the_group_level():
    g = mutate_sgroup(make_int_sgroup(), "identity")
    rep = audit_sgroup(g, 30)
    assert not rep.passed
    assert any("identity" in c.name for c in rep.failures())
