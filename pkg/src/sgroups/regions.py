"""Regions indexing S-spaces: rational open intervals, finite sets, and the empty region."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from sgroups.rational import as_rational, fmt_rational, parse_rational

__all__ = [
    "Interval",
    "FinSet",
    "EmptyRegion",
    "EMPTY",
    "Region",
    "intersect",
    "is_subset",
    "union_equals",
    "region_from_json",
    "region_to_json",
    "parse_interval",
    "region_key",
]


@dataclass(frozen=True, order=True)
class Interval:
    """Open interval ``(left, right)`` with rational endpoints."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", as_rational(self.left))
        object.__setattr__(self, "right", as_rational(self.right))
        if not self.left < self.right:
            raise ValueError(f"empty interval ({self.left}, {self.right})")

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2

    def contains(self, x) -> bool:
        return self.left < x < self.right

    def sample_point(self, rng: random.Random, max_den: int = 8) -> Fraction:
        d = rng.randint(1, max_den)
        k = rng.randint(1, d)
        return self.left + (self.right - self.left) * Fraction(k, d + 1)

    def __str__(self):
        return f"({fmt_rational(self.left)},{fmt_rational(self.right)})"


@dataclass(frozen=True)
class FinSet:
    """Finite set of hashable points, kept sorted by ``repr`` for a stable order."""

    points: tuple

    def __post_init__(self):
        pts = tuple(sorted(set(self.points), key=repr))
        if not pts:
            raise ValueError("use EMPTY for the empty region")
        object.__setattr__(self, "points", pts)

    def contains(self, x) -> bool:
        return x in self.points

    def sample_point(self, rng: random.Random, max_den: int = 8):
        return rng.choice(self.points)

    def __str__(self):
        if self.points == ("I",):
            return "I"
        return "{" + ",".join(str(p) for p in self.points) + "}"


class EmptyRegion:
    """The designated empty region."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def contains(self, x) -> bool:
        return False

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "∅"

    def __reduce__(self):
        return (EmptyRegion, ())


EMPTY = EmptyRegion()

Region = Union[Interval, FinSet, EmptyRegion]


def intersect(a: Region, b: Region) -> Region:
    if a is EMPTY or b is EMPTY:
        return EMPTY
    if isinstance(a, Interval) and isinstance(b, Interval):
        lo, hi = max(a.left, b.left), min(a.right, b.right)
        return Interval(lo, hi) if lo < hi else EMPTY
    if isinstance(a, FinSet) and isinstance(b, FinSet):
        common = set(a.points) & set(b.points)
        return FinSet(tuple(common)) if common else EMPTY
    raise TypeError(f"cannot intersect {a!r} with {b!r}")


def is_subset(a: Region, b: Region) -> bool:
    """Exact test ``a ⊆ b``."""
    if a is EMPTY:
        return True
    if b is EMPTY:
        return False
    if isinstance(a, Interval) and isinstance(b, Interval):
        return b.left <= a.left and a.right <= b.right
    if isinstance(a, FinSet) and isinstance(b, FinSet):
        return set(a.points) <= set(b.points)
    return False


def union_equals(parts: Iterable[Region], whole: Region) -> bool:
    """Decide whether the union of ``parts`` is exactly ``whole``.

    Open intervals must genuinely overlap to cover a shared endpoint, so
    ``(0,1)`` and ``(1,2)`` do not cover ``(0,2)``.
    """
    parts = [p for p in parts if p is not EMPTY]
    if any(not is_subset(p, whole) for p in parts):
        return False
    if whole is EMPTY:
        return True
    if isinstance(whole, FinSet):
        got = set()
        for p in parts:
            got |= set(p.points)
        return got == set(whole.points)
    ivs = sorted(parts, key=lambda p: (p.left, p.right))
    if not ivs or ivs[0].left != whole.left:
        return False
    reach = ivs[0].right
    for iv in ivs[1:]:
        if iv.left >= reach:
            return False
        reach = max(reach, iv.right)
    return reach == whole.right


def region_to_json(r: Region):
    if r is EMPTY:
        return "empty"
    if isinstance(r, Interval):
        return [fmt_rational(r.left, always_ratio=True), fmt_rational(r.right, always_ratio=True)]
    return {"points": list(r.points)}


def region_from_json(obj) -> Region:
    if obj == "empty" or obj is None:
        return EMPTY
    if isinstance(obj, dict):
        return FinSet(tuple(obj["points"]))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Interval(parse_rational(obj[0]), parse_rational(obj[1]))
    raise ValueError(f"malformed region {obj!r}")


def parse_interval(text: str) -> Region:
    """Parse ``"(a,b)"``, ``"empty"`` or ``"I"``."""
    t = text.strip()
    if t in ("empty", "∅"):
        return EMPTY
    if t == "I":
        return FinSet(("I",))
    if not (t.startswith("(") and t.endswith(")")) or t.count(",") != 1:
        raise ValueError(f"malformed interval {text!r}")
    a, b = t[1:-1].split(",")
    return Interval(parse_rational(a), parse_rational(b))



def region_key(r: Region):
    """Sort key: the empty region first, then finite sets, then intervals by endpoints."""
    if r is EMPTY:
        return (0,)
    if isinstance(r, FinSet):
        return (1, tuple(repr(p) for p in r.points))
    return (2, r.left, r.right)
