from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgroups.regions import (
    EMPTY, FinSet, Interval, intersect, is_subset, parse_interval, region_from_json,
    region_key, region_to_json, union_equals,
)

ends = st.integers(-6, 6)


@st.composite
def intervals(draw):
    a = draw(ends)
    b = draw(ends.filter(lambda v: v != a))
    return Interval(min(a, b), max(a, b))


def test_interval_needs_order():
    with pytest.raises(ValueError):
        Interval(1, 1)


def test_open_intervals_need_overlap_to_cover():
    assert not union_equals([Interval(0, 1), Interval(1, 2)], Interval(0, 2))
    assert union_equals([Interval(0, 2), Interval(1, 3)], Interval(0, 3))
    assert union_equals([], EMPTY)


def test_intersections():
    assert intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2)
    assert intersect(Interval(0, 1), Interval(1, 2)) is EMPTY
    assert intersect(FinSet(("I",)), EMPTY) is EMPTY


@given(intervals(), intervals())
def test_intersection_is_a_lower_bound(a, b):
    z = intersect(a, b)
    assert is_subset(z, a) and is_subset(z, b)
    assert intersect(a, b) == intersect(b, a)


@given(intervals())
def test_json_roundtrip(a):
    assert region_from_json(region_to_json(a)) == a
    assert parse_interval(str(a)) == a


def test_parse_and_json_specials():
    assert parse_interval("empty") is EMPTY
    assert parse_interval("(-1, 1/2)") == Interval(-1, Fraction(1, 2))
    assert region_from_json(region_to_json(EMPTY)) is EMPTY
    assert region_from_json(region_to_json(FinSet(("I",)))) == FinSet(("I",))
    with pytest.raises(ValueError):
        parse_interval("[0,1]")


def test_region_key_orders_empty_first():
    regs = [Interval(1, 2), EMPTY, Interval(0, 3), FinSet(("I",))]
    assert sorted(regs, key=region_key) == [EMPTY, FinSet(("I",)), Interval(0, 3), Interval(1, 2)]
