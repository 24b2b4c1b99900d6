import random

import pytest
from hypothesis import given, strategies as st

from sgroups.algebra import UsageError
from sgroups.extension import (
    ExtensionRefused, ExtSGroup, LiftRefused, LiftSpec, PairElement, RegionMismatch, lift_hom, sim,
    verify_closed, verify_strict,
)
from sgroups.models import (
    int_class_value, make_int_sgroup, make_pp_sgroup, pp_abs, pp_const, pp_restrict, pp_x,
)
from sgroups.regions import Interval

J, R = Interval(-1, 1), Interval(0, 1)
seeds = st.integers(0, 10**6)


def test_sim_examples(int_ext, pp_ext):
    e = int_ext
    assert sim(PairElement(2, 1, e), PairElement(4, 2, e))
    assert sim(PairElement(1, 3, e), PairElement(1, 3, e))
    p = pp_ext
    assert sim(PairElement(1, pp_x(J), p), PairElement(0, pp_const(J, 1), p))
    rng = random.Random(1)
    for _ in range(30):
        g = p.base.group.sample(rng)
        assert not sim(PairElement(1, pp_abs(J), p), PairElement(0, g, p))


def test_addition_examples(int_ext, pp_ext):
    e = int_ext
    s = e.pair(2, 1) + e.pair(3, 1)
    assert s == e.pair(6, 5) and int_class_value(s) == int_class_value(e.pair(6, 5))
    assert e.render(s) == "[f_6, 5] ≙ 5/6"
    x = e.pair(4, 7)
    assert x + e.zero == x
    p = pp_ext
    assert p.pair(1, pp_abs(J)) + p.pair(1, -pp_abs(J)) == p.zero
    assert p.render(p.zero) == "[I_G, 0]"


def test_embedding_and_prolongation(int_ext, pp_ext):
    e = int_ext
    assert e.embed(0) == e.zero
    assert e.embed(3) != e.embed(5)
    assert e.prolong(2, e.pair(3, 1)) == e.pair(6, 1)
    p = pp_ext
    d = p.prolong(1, p.pair(1, pp_abs(J)))
    assert d == p.pair(2, pp_abs(J))
    assert not p.is_embedded(d)


@given(seeds)
def test_classes_are_closed_and_respelling_is_invisible(seed):
    e = ExtSGroup(make_int_sgroup())
    rng = random.Random(seed)
    x = e.sample(rng)
    y = e.respell(x, rng)
    assert x == y
    assert e.prolong(x.hom, e.embed(x.elem)) == x
    assert e.to_json(x) == e.to_json(y)


@given(seeds)
def test_integer_classes_are_fractions(seed):
    e = ExtSGroup(make_int_sgroup())
    rng = random.Random(seed)
    a, b = e.sample(rng), e.sample(rng)
    assert (a == b) == (int_class_value(a) == int_class_value(b))
    assert int_class_value(a + b) == int_class_value(a) + int_class_value(b)
    assert int_class_value(-a) == -int_class_value(a)


def test_serialization_roundtrip(int_ext, pp_ext):
    import json

    rng = random.Random(5)
    for e in (int_ext, pp_ext):
        for _ in range(20):
            x = e.sample(rng)
            text = json.dumps(e.to_json(x))
            assert json.dumps(e.to_json(e.from_json(json.loads(text)))) == text


@pytest.mark.parametrize("name", ["int_ext", "pp_ext", "z5_ext"])
def test_strict_and_closed(name, request):
    e = request.getfixturevalue(name)
    assert verify_strict(e, 150, seed=2).passed
    assert verify_closed(e, 150, seed=2).passed


def test_refusals():
    from dataclasses import replace

    s = replace(make_int_sgroup(), surjective=False, _cache={})
    with pytest.raises(ExtensionRefused):
        ExtSGroup(s)
    with pytest.raises(UsageError):
        ExtSGroup(make_int_sgroup()).pair(0, 1)


def test_region_mismatch():
    a = ExtSGroup(make_pp_sgroup(J), region=J)
    b = ExtSGroup(make_pp_sgroup(R), region=R)
    with pytest.raises(RegionMismatch):
        a.embed(pp_x(J)) + b.embed(pp_x(R))


def test_restriction_lift():
    src = ExtSGroup(make_pp_sgroup(J), region=J)
    dst = ExtSGroup(make_pp_sgroup(R), region=R)
    lift = lift_hom(LiftSpec(src, dst, lambda n: n, lambda f: pp_restrict(f, R)), 60)
    assert lift(src.pair(1, pp_abs(J))) == dst.embed(pp_const(R, 1))
    ident = lift_hom(LiftSpec(src, src, lambda n: n, lambda f: f), 30)
    x = src.pair(2, pp_abs(J))
    assert ident(x) == x


def test_bad_lift_is_refused():
    src = ExtSGroup(make_pp_sgroup(J), region=J)
    dst = ExtSGroup(make_pp_sgroup(R), region=R)
    with pytest.raises(LiftRefused) as info:
        lift_hom(LiftSpec(src, dst, lambda n: 2 * n, lambda f: pp_restrict(f, R)), 60)
    assert not info.value.report.passed
