import random
from dataclasses import replace
from fractions import Fraction

import pytest

from sgroups.algebra import UsageError
from sgroups.extension import ExtSGroup
from sgroups.models import int_class_value, make_int_sgroup, make_rational_sgroup, pp_abs, pp_poly, pp_x
from sgroups.models.pp import extend_poly, pp_restrict
from sgroups.regions import EMPTY, Interval
from sgroups.spaces import (
    Cover, Incoherent, Indexer, IsoWitness, RestrictionFamily, UnsupportedError, coherent_check,
    generated_sspace, glue, indexer_validate, iso_check, sspace_from_json, sspace_to_json,
    sspace_validate, subspace,
)
from sgroups.tess import build_tilde

I, L, R, M = Interval(0, 3), Interval(0, 2), Interval(1, 3), Interval(1, 2)


def check_named(rep, name):
    return next(c for c in rep.checks if c.name == name)


# indexers


def test_five_region_indexer_passes(pp5):
    assert indexer_validate(pp5.indexer).passed
    assert len(pp5.regions) == 5


def test_indexer_missing_intersection_names_the_pair(pp5):
    groups = {r: pp5.group(r) for r in pp5.regions if r != M}
    rep = indexer_validate(Indexer.build(I, groups))
    c = check_named(rep, "closed under intersection")
    assert not c.passed
    assert c.counterexample == "((0,2), (1,3))"


def test_singleton_indexer_passes():
    s = generated_sspace(make_int_sgroup())
    assert indexer_validate(s.indexer).passed
    assert s.indexer.delta() == [(s.ground, s.ground)]


def test_delta_is_the_subset_relation(pp5):
    d = set(pp5.indexer.delta())
    assert (M, L) in d and (M, R) in d and (EMPTY, M) in d
    assert (L, R) not in d and (I, L) not in d
    assert all((r, r) in d for r in pp5.regions)


def test_covers_of_the_ground(pp5):
    covers = [c.parts for c in pp5.covers(I)]
    assert covers[0] == (I,)
    assert (L, R) in covers


def test_cover_must_cover():
    with pytest.raises(ValueError):
        Cover(I, (L, M))


# validation


def test_pp5_validates(pp5):
    rep = sspace_validate(pp5, samples=40, seed=3)
    assert rep.passed, rep.failures()


def test_generated_int_space_validates():
    s = generated_sspace(make_int_sgroup())
    assert s.abelian and s.surjective and s.with_identity and s.coherent
    assert sspace_validate(s, samples=60).passed


def test_dropping_a_breakpoint_breaks_composition(pp5):
    def bad(target, source, f):
        if source == I and target == L:
            return extend_poly(f.pieces[0], L)
        return pp5.restriction.apply(target, source, f)

    s = replace(pp5, restriction=RestrictionFamily(bad))
    rep = sspace_validate(s, samples=80, seed=1, audit_groups=False)
    c = check_named(rep, "restriction: composition")
    assert not c.passed and c.counterexample


def test_bonding_identity_on_the_diagonal(pp5):
    for r in pp5.regions:
        for lab in pp5.labels(r):
            assert pp5.bond(r, r, lab) == lab


# coherence and gluing


def test_coherence_examples(pp5):
    f = pp_abs(I, 1)
    cov = Cover(I, (L, R))
    assert coherent_check(pp5, cov, [pp_restrict(f, L), pp_restrict(f, R)])
    assert not coherent_check(pp5, cov, [pp_x(L), pp_poly(R, (1, 1))])
    assert coherent_check(pp5, Cover(I, (I,)), [pp_x(I)])


def test_glue_examples(pp5):
    cov = Cover(I, (L, R))
    assert glue(pp5, cov, [pp_x(L), pp_x(R)]) == pp_x(I)
    f = pp_abs(I, 1)
    assert glue(pp5, cov, [pp_restrict(f, L), pp_restrict(f, R)]) == f
    with pytest.raises(Incoherent) as info:
        glue(pp5, cov, [pp_x(L), pp_poly(R, (1, 1))])
    assert info.value.pair == (L, R)


def test_glue_needs_a_coherent_space(pp5):
    s = replace(pp5, coherent=False)
    with pytest.raises(UnsupportedError):
        glue(s, Cover(I, (I,)), [pp_x(I)])


def test_agreement_on_a_cover_forces_equality(pp5):
    rng = random.Random(5)
    for _ in range(40):
        g = pp5.sample(I, rng)
        d = pp5.sample(I, rng)
        if d == 0 * d:
            continue
        for cov in pp5.covers(I):
            assert any(pp_restrict(g + d, p) != pp_restrict(g, p) for p in cov.parts)


# subspaces


def test_subspace_of_a_region(pp5):
    sub = subspace(pp5, L)
    assert set(sub.regions) == {L, M, EMPTY}
    assert sub.ground == L
    assert sspace_validate(sub, samples=30, audit_groups=False).passed


def test_subspace_at_the_ground_is_the_space(pp5):
    assert subspace(pp5, I) is pp5
    s = generated_sspace(make_int_sgroup())
    assert subspace(s, s.ground) is s
    with pytest.raises(UsageError):
        subspace(pp5, Interval(0, 1))


# isomorphisms


def test_identity_witness(pp5):
    w = IsoWitness(lambda r, g: g, lambda r, lab: lab, lambda r, g: g)
    assert iso_check(pp5, pp5, w, samples=40).passed


def test_integer_extension_is_the_rationals():
    t = build_tilde(generated_sspace(make_int_sgroup()), samples=20)
    q = generated_sspace(make_rational_sgroup())
    e = t.ext[t.space.ground]
    w = IsoWitness(
        alpha=lambda r, x: int_class_value(x),
        beta=lambda r, n: n,
        alpha_inv=lambda r, v: e.pair(Fraction(v).denominator, Fraction(v).numerator),
    )
    rep = iso_check(t.space, q, w, samples=200, seed=2)
    assert rep.passed, rep.failures()


def test_inconsistent_scaling_breaks_restriction(pp5):
    w = IsoWitness(lambda r, g: g + g if r == M else g, lambda r, lab: lab)
    rep = iso_check(pp5, pp5, w, samples=80, seed=1)
    assert not check_named(rep, "(b) alpha commutes with restriction").passed
    assert check_named(rep, "alpha is a homomorphism").passed


# serialization


def test_space_descriptor_round_trip():
    obj = {"model": "pp", "regions": [[0, 3], [0, 2], [1, 3], [1, 2], "empty"],
           "caps": {"max_order": 2, "max_degree": 2, "max_breaks": 2}}
    s = sspace_from_json(obj)
    assert set(s.regions) == {I, L, R, M, EMPTY}
    out = sspace_to_json(s)
    assert out["model"] == "pp" and out["flags"]["coherent"]
    assert set(sspace_from_json({"model": "pp", "regions": out["regions"]}).regions) == set(s.regions)


@pytest.mark.parametrize("bad", [{}, {"model": "real"}, {"model": "pp", "regions": [[0, 1], ["a"]]}])
def test_bad_descriptors(bad):
    with pytest.raises((ValueError, KeyError, TypeError)):
        sspace_from_json(bad)


def test_generated_extension_group_is_the_ext_group():
    s = generated_sspace(make_int_sgroup())
    t = build_tilde(s, samples=10)
    e = t.ext[s.ground]
    assert isinstance(e, ExtSGroup)
    assert e.pair(2, 1) + e.pair(2, 1) == e.embed(1)
