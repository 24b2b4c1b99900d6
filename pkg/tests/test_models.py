from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgroups.algebra import UsageError, audit_sgroup
from sgroups.extension import ExtSGroup
from sgroups.models import (
    ModelDescriptor, PPFunction, ResourceError, make_int_sgroup, make_pp_sgroup,
    make_rational_sgroup, make_trivial_sgroup, pp_abs, pp_poly, pp_regularity_order, pp_restrict,
    pp_saw, pp_x, random_pp,
)
from sgroups.regions import Interval

J = Interval(-1, 1)
seeds = st.integers(0, 10**6)


def xabs(dom=J):
    return pp_x(dom) * pp_abs(dom)


# integers


def test_int_oracles():
    s = make_int_sgroup()
    f2, f3 = s.oracle(2), s.oracle(3)
    assert f2.apply(6) == 3
    assert not f2.in_domain(3)
    assert f3.preimage(4) == 12 and f3.apply(12) == 4
    with pytest.raises(UsageError):
        f2.apply(3)


def test_int_and_rational_audits():
    assert audit_sgroup(make_int_sgroup(), 100).passed
    assert audit_sgroup(make_rational_sgroup(), 100).passed


# piecewise polynomials


def test_pp_examples():
    s = make_pp_sgroup(J)
    d1 = s.oracle(1)
    assert d1.apply(xabs()) == 2 * pp_abs(J)
    assert not d1.in_domain(pp_abs(J))
    assert s.oracle(0).in_domain(pp_abs(J))
    w = d1.preimage(pp_abs(J))
    assert w == xabs().scale(Fraction(1, 2))
    assert d1.apply(w) == pp_abs(J)


def test_regularity_fixtures():
    assert pp_regularity_order(pp_abs(J), 5) == 0
    assert pp_regularity_order(xabs(), 5) == 1
    assert pp_regularity_order(pp_x(J, 3), 4) == 4
    assert pp_regularity_order(pp_saw(J, 3), 5) == 0


def test_restrict_examples():
    assert pp_restrict(pp_abs(J), Interval(0, 1)) == pp_x(Interval(0, 1))
    with pytest.raises(UsageError):
        pp_restrict(pp_abs(J), Interval(0, 2))


@given(seeds)
def test_restrict_composes_and_is_additive(seed):
    import random

    r = random.Random(seed)
    f, g = random_pp(r, J), random_pp(r, J)
    mid, inner = Interval(Fraction(-1, 2), 1), Interval(0, Fraction(3, 4))
    assert pp_restrict(pp_restrict(f, mid), inner) == pp_restrict(f, inner)
    assert pp_restrict(f + g, mid) == pp_restrict(f, mid) + pp_restrict(g, mid)


@given(seeds)
def test_antiderivative_is_right_inverse(seed):
    import random

    f = random_pp(random.Random(seed), J)
    F = f.antiderivative()
    assert F.derivative(1) == f
    assert F(J.midpoint) == 0
    assert F.is_continuous() and F.regularity(1) >= 1


@given(seeds)
def test_canonical_encoding_is_unique(seed):
    import random

    f = random_pp(random.Random(seed), J)
    g = (f + pp_abs(J)) - pp_abs(J)
    assert g == f and g.to_json() == f.to_json()
    assert PPFunction.from_json(f.to_json()) == f


def test_canonical_merge_and_continuity():
    f = PPFunction.build(J, [0], [(0, 1), (0, 1)])
    assert f.breaks == () and f == pp_x(J)
    with pytest.raises(ValueError):
        PPFunction.from_json({"domain": ["-1", "1"], "breaks": ["0"], "pieces": [["0"], ["1"]]})


def test_pp_kernel_is_low_degree_polynomials():
    s = make_pp_sgroup(J)
    assert s.oracle(2).in_kernel(pp_poly(J, (3, -1)))
    assert not s.oracle(2).in_kernel(pp_x(J, 2))
    assert not s.oracle(3).in_kernel(pp_abs(J))


def test_descriptor_bounds():
    with pytest.raises(ValueError):
        ModelDescriptor("pp", J, max_degree=0)
    with pytest.raises(ResourceError):
        ModelDescriptor("pp", J, max_order=17)
    with pytest.raises(ValueError):
        ModelDescriptor("quaternion")


# the cyclic model


def test_trivial_model_extension_is_itself():
    s = make_trivial_sgroup(5)
    e = ExtSGroup(s)
    classes = [e.pair(k, m) for k in range(1, 5) for m in range(5)]
    distinct = []
    for c in classes:
        if all(c != d for d in distinct):
            distinct.append(c)
    assert len(distinct) == 5
    assert all(e.is_embedded(c) for c in classes)
    assert e.prolong(2, e.embed(3)) == e.embed(1)
    with pytest.raises(UsageError):
        make_trivial_sgroup(6)
