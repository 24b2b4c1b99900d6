"""Piecewise polynomial functions on a rational open interval.

A :class:`PPFunction` is stored in canonical form: breakpoints strictly
increasing and strictly inside the domain, one polynomial per cell in the
global variable ``x``, adjacent identical pieces merged and coefficients
trimmed. Canonical form is unique, so structural equality is function
equality.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from sgroups.models import poly
from sgroups.rational import fmt_rational, parse_rational
from sgroups.regions import Interval

__all__ = ["PPFunction", "pp_abs", "pp_saw", "pp_poly", "pp_const", "pp_x", "random_pp"]


@dataclass(frozen=True)
class PPFunction:
    domain: Interval
    breaks: tuple
    pieces: tuple

    @classmethod
    def build(cls, domain: Interval, breaks, pieces) -> "PPFunction":
        breaks = [Fraction(b) for b in breaks]
        pieces = [poly.trim(p) for p in pieces]
        if len(pieces) != len(breaks) + 1:
            raise ValueError("need exactly one more piece than breakpoints")
        for a, b in zip(breaks, breaks[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        if breaks and not (domain.left < breaks[0] and breaks[-1] < domain.right):
            raise ValueError("breakpoints must lie strictly inside the domain")
        out_b, out_p = [], [pieces[0]]
        for b, p in zip(breaks, pieces[1:]):
            if p == out_p[-1]:
                continue
            out_b.append(b)
            out_p.append(p)
        return cls(domain, tuple(out_b), tuple(out_p))

    # cells and evaluation

    def cells(self):
        """Yield ``(left, right, piece)`` for each cell."""
        edges = (self.domain.left,) + self.breaks + (self.domain.right,)
        for i, p in enumerate(self.pieces):
            yield edges[i], edges[i + 1], p

    def piece_at(self, x) -> tuple:
        """Piece governing the open cell containing ``x`` (left piece at a break)."""
        i = bisect_right(self.breaks, Fraction(x))
        if i > 0 and self.breaks[i - 1] == x:
            i -= 1
        return self.pieces[i]

    def __call__(self, x) -> Fraction:
        return poly.evaluate(self.piece_at(x), x)

    def is_continuous(self) -> bool:
        return all(
            poly.evaluate(p, b) == poly.evaluate(q, b)
            for b, p, q in zip(self.breaks, self.pieces, self.pieces[1:])
        )

    def regularity(self, cap: int) -> int:
        """Largest ``k <= cap`` with piece derivatives of order ``<= k`` matching at every break.

        Returns ``-1`` for a discontinuous function.
        """
        k = cap
        for b, p, q in zip(self.breaks, self.pieces, self.pieces[1:]):
            k = min(k, poly.root_multiplicity(poly.sub(p, q), b, k + 1) - 1)
        return k

    @property
    def is_polynomial(self) -> bool:
        return not self.breaks

    # arithmetic

    def _common(self, other: "PPFunction"):
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch {self.domain} vs {other.domain}")
        return sorted(set(self.breaks) | set(other.breaks))

    def _zip(self, other, op) -> "PPFunction":
        brks = self._common(other)
        edges = [self.domain.left] + brks + [self.domain.right]
        pieces = []
        for a, b in zip(edges, edges[1:]):
            m = (a + b) / 2
            pieces.append(op(self.piece_at(m), other.piece_at(m)))
        return PPFunction.build(self.domain, brks, pieces)

    def __add__(self, other):
        if not isinstance(other, PPFunction):
            return NotImplemented
        return self._zip(other, poly.add)

    def __sub__(self, other):
        if not isinstance(other, PPFunction):
            return NotImplemented
        return self._zip(other, poly.sub)

    def __neg__(self):
        return PPFunction(self.domain, self.breaks, tuple(poly.neg(p) for p in self.pieces))

    def scale(self, q) -> "PPFunction":
        q = Fraction(q)
        return PPFunction.build(self.domain, self.breaks, [poly.scale(p, q) for p in self.pieces])

    def __mul__(self, other):
        if isinstance(other, PPFunction):
            return self._zip(other, poly.mul)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    # calculus

    def derivative(self, n: int = 1) -> "PPFunction":
        """Piecewise ``n``-th derivative; continuous only if regularity ``>= n``."""
        return PPFunction.build(self.domain, self.breaks, [poly.deriv(p, n) for p in self.pieces])

    def antiderivative(self) -> "PPFunction":
        """Continuous piecewise antiderivative vanishing at the domain midpoint."""
        out = []
        shift = Fraction(0)
        for i, p in enumerate(self.pieces):
            q = poly.integ(p)
            if i:
                b = self.breaks[i - 1]
                shift = poly.evaluate(out[-1], b) - poly.evaluate(q, b)
            out.append(poly.add(q, (shift,)))
        f = PPFunction.build(self.domain, self.breaks, out)
        c = f(self.domain.midpoint)
        if not c:
            return f
        return PPFunction.build(self.domain, f.breaks, [poly.sub(p, (c,)) for p in f.pieces])

    def restrict(self, sub: Interval) -> "PPFunction":
        if not (self.domain.left <= sub.left and sub.right <= self.domain.right):
            raise ValueError(f"{sub} is not inside {self.domain}")
        keep = [b for b in self.breaks if sub.left < b < sub.right]
        edges = [sub.left] + keep + [sub.right]
        pieces = [self.piece_at((a + b) / 2) for a, b in zip(edges, edges[1:])]
        return PPFunction.build(sub, keep, pieces)

    # serialization and display

    def to_json(self) -> dict:
        r = lambda q: fmt_rational(q, always_ratio=True)  # noqa: E731
        return {
            "domain": [r(self.domain.left), r(self.domain.right)],
            "breaks": [r(b) for b in self.breaks],
            "pieces": [[r(c) for c in p] for p in self.pieces],
        }

    @classmethod
    def from_json(cls, obj) -> "PPFunction":
        try:
            dom = Interval(parse_rational(obj["domain"][0]), parse_rational(obj["domain"][1]))
            breaks = [parse_rational(b) for b in obj["breaks"]]
            pieces = [[parse_rational(c) for c in p] for p in obj["pieces"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed piecewise function: {exc}") from exc
        f = cls.build(dom, breaks, pieces)
        if not f.is_continuous():
            raise ValueError("piecewise function is not continuous")
        return f

    def render(self) -> str:
        if not self.breaks:
            return poly.render(self.pieces[0])
        if len(self.breaks) == 1:
            named = _render_kink(self)
            if named:
                return named
        cells = "; ".join(
            f"({fmt_rational(a)},{fmt_rational(b)}): {poly.render(p)}" for a, b, p in self.cells()
        )
        return "pw{" + cells + "}"

    def __str__(self):
        return self.render()


def _render_kink(f: PPFunction):
    """Render ``a*|x - c| + p(x)`` when the single kink has that shape."""
    c = f.breaks[0]
    left, right = f.pieces
    jump = poly.sub(right, left)
    if len(jump) > 2 or poly.evaluate(jump, c) != 0:
        return None
    a = jump[1] / 2 if len(jump) == 2 else Fraction(0)
    if a == 0:
        return None
    rest = poly.scale(poly.add(left, right), Fraction(1, 2))
    inner = "x" if c == 0 else f"x {'-' if c > 0 else '+'} {fmt_rational(abs(c))}"
    core = f"|{inner}|"
    if a != 1:
        core = f"-{core}" if a == -1 else f"{fmt_rational(a)}*{core}"
    if not rest:
        return core
    tail = poly.render(rest)
    return f"{core} - {tail[1:]}" if tail.startswith("-") else f"{core} + {tail}"


def pp_poly(domain: Interval, coeffs) -> PPFunction:
    return PPFunction.build(domain, (), [coeffs])


def pp_const(domain: Interval, c) -> PPFunction:
    return pp_poly(domain, (Fraction(c),))


def pp_x(domain: Interval, n: int = 1) -> PPFunction:
    return pp_poly(domain, poly.power_of_linear(0, n))


def pp_abs(domain: Interval, center=0, linear=None) -> PPFunction:
    """``|x - center|`` on ``domain`` (a plain polynomial if the kink is outside)."""
    center = Fraction(center)
    lin = (Fraction(-center), Fraction(1))
    if center <= domain.left:
        return pp_poly(domain, lin)
    if center >= domain.right:
        return pp_poly(domain, poly.neg(lin))
    return PPFunction.build(domain, [center], [poly.neg(lin), lin])


def pp_saw(domain: Interval, k: int) -> PPFunction:
    """Continuous zigzag with ``k`` equally spaced kinks, slopes alternating ``+1, -1``."""
    if k < 0:
        raise ValueError("saw needs k >= 0")
    step = (domain.right - domain.left) / (k + 1)
    breaks = [domain.left + step * (i + 1) for i in range(k)]
    pieces = []
    value, start = Fraction(0), domain.left
    for i in range(k + 1):
        slope = Fraction(1) if i % 2 == 0 else Fraction(-1)
        pieces.append((value - slope * start, slope))
        start = start + step
        value = value + slope * step
    return PPFunction.build(domain, breaks, pieces)


def random_pp(rng: random.Random, domain: Interval, max_breaks=2, max_degree=3, max_den=4, bound=3):
    """Random continuous piecewise polynomial with varied regularity at each kink."""

    def coeff():
        return Fraction(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))

    def rpoly(deg):
        return poly.trim(coeff() for _ in range(deg + 1))

    nb = rng.randint(0, max_breaks)
    pts = set()
    for _ in range(nb):
        pts.add(domain.sample_point(rng, max_den))
    breaks = sorted(pts)
    piece = rpoly(rng.randint(0, max_degree))
    pieces = [piece]
    for b in breaks:
        j = rng.randint(1, max(1, max_degree))
        bump = poly.mul(poly.power_of_linear(b, j), rpoly(rng.randint(0, max(0, max_degree - j))))
        if not bump:
            bump = poly.power_of_linear(b, j)
        piece = poly.add(piece, bump)
        pieces.append(piece)
    return PPFunction.build(domain, breaks, pieces)
