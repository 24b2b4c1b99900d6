"""Continuous piecewise polynomials on an interval with the derivatives ``dⁿ``.

``G`` is the group of continuous piecewise polynomial functions on ``J``;
``dⁿ`` is defined on functions whose breakpoints join to order ``n``
(regularity ``>= n``) and differentiates piecewise. Its kernel is the global
polynomials of degree ``< n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from sgroups.algebra import GroupModel, HomOracle, LabelMonoid, SGroup, UsageError
from sgroups.models.ppfunc import PPFunction, random_pp
from sgroups.regions import Interval

__all__ = [
    "ResourceError",
    "ModelDescriptor",
    "make_pp_sgroup",
    "pp_regularity_order",
    "pp_restrict",
    "pp_label_render",
    "glue_pp",
    "glue_tilde_pp",
    "lift_order",
]

_HARD_LIMITS = {"max_den": 10**6, "max_degree": 16, "max_breaks": 32, "max_order": 16, "bound": 10**6}


class ResourceError(RuntimeError):
    """Sampler or construction bounds exceed what the exact calculus supports."""


@dataclass(frozen=True)
class ModelDescriptor:
    """Which model and the bounds used by its samplers."""

    model: str = "pp"
    domain: Optional[Interval] = None
    max_den: int = 4
    max_degree: int = 3
    max_breaks: int = 2
    max_order: int = 3
    bound: int = 3
    modulus: int = 5
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.model not in ("int", "pp", "trivial"):
            raise ValueError(f"unknown model {self.model!r}")
        for name, limit in _HARD_LIMITS.items():
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            if v > limit:
                raise ResourceError(f"{name}={v} exceeds the supported bound {limit}")


def pp_label_render(n: int) -> str:
    return "I_G" if n == 0 else f"d^{n}"


def pp_regularity_order(f: PPFunction, cap: int) -> int:
    """Largest ``k <= cap`` such that piece derivatives up to order ``k`` agree at every break."""
    return f.regularity(cap)


def pp_restrict(f: PPFunction, sub: Interval) -> PPFunction:
    try:
        return f.restrict(sub)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _antiderivative(f: PPFunction, n: int) -> PPFunction:
    for _ in range(n):
        f = f.antiderivative()
    return f


def _oracle(J: Interval, n: int, caps: ModelDescriptor) -> HomOracle:
    def in_domain(f):
        return f.domain == J and f.regularity(n) >= n

    def apply(f):
        if not in_domain(f):
            raise UsageError(f"{f} is not in the domain of {pp_label_render(n)}")
        return f.derivative(n)

    def in_kernel(f):
        return f.domain == J and f.is_polynomial and len(f.pieces[0]) <= n

    def kernel_sample(rng):
        coeffs = [Fraction(rng.randint(-caps.bound, caps.bound), rng.randint(1, caps.max_den))
                  for _ in range(n)]
        return PPFunction.build(J, (), [coeffs])

    @lru_cache(maxsize=4096)
    def preimage(f):
        return _antiderivative(f, n)

    return HomOracle(in_domain, apply, preimage, in_kernel, kernel_sample)


def _reduce(n, f):
    k = min(f.regularity(n), n)
    return (n - k, f.derivative(k)) if k else (n, f)


def make_pp_sgroup(J: Interval, caps: Optional[ModelDescriptor] = None) -> SGroup:
    """``G`` = continuous piecewise polynomials on ``J``, ``H = {dⁿ : n >= 0}`` with ``d⁰ = I_G``."""
    caps = caps or ModelDescriptor("pp", J)
    if not isinstance(J, Interval):
        raise UsageError(f"piecewise model needs an interval, got {J!r}")

    def sample(rng: random.Random):
        return random_pp(rng, J, caps.max_breaks, caps.max_degree, caps.max_den, caps.bound)

    zero = PPFunction.build(J, (), [()])
    group = GroupModel(
        eq=lambda a, b: a == b,
        zero=zero,
        add=lambda a, b: a + b,
        neg=lambda a: -a,
        sample=sample,
        render=lambda f: f.render(),
    )
    monoid = LabelMonoid(
        name="pp",
        compose=lambda a, b: a + b,
        identity=0,
        sample=lambda rng: rng.randint(0, caps.max_order),
        render=pp_label_render,
        contains=lambda n: isinstance(n, int) and not isinstance(n, bool) and n >= 0,
    )

    def decode(obj):
        f = PPFunction.from_json(obj)
        if f.domain != J:
            raise ValueError(f"function lives on {f.domain}, expected {J}")
        return f

    hooks = {
        "encode": lambda f: f.to_json(),
        "decode": decode,
        "encode_ext": lambda n, f: {"order": n, "function": f.to_json()},
        "decode_ext": lambda obj: (_order(obj), decode(obj["function"])),
        "reduce": _reduce,
        "labels": lambda cap: range(0, cap + 1),
        "caps": caps,
        "domain": J,
    }
    return SGroup(f"pp{J}", group, monoid, lambda n: _oracle(J, n, caps), model="pp", hooks=hooks)


def _order(obj):
    n = obj.get("order") if isinstance(obj, dict) else None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"malformed order label in {obj!r}")
    return n


def lift_order(n: int, f: PPFunction, target: int):
    """Re-express ``[dⁿ, f]`` as ``[d^target, F]`` with ``F`` an antiderivative of ``f``."""
    if target < n:
        raise ValueError("can only raise the order")
    return target, _antiderivative(f, target - n)


def glue_pp(region, parts, fam) -> PPFunction:
    """Merge functions on open subintervals covering ``region`` that agree on overlaps.

    Each cell between consecutive breakpoints or patch endpoints takes its
    piece from any patch containing the cell midpoint.
    """
    cuts = set()
    for xi, f in zip(parts, fam):
        cuts.update(f.breaks)
        cuts.update(e for e in (xi.left, xi.right) if region.left < e < region.right)
    edges = [region.left] + sorted(cuts) + [region.right]
    pieces = []
    for a, b in zip(edges, edges[1:]):
        m = (a + b) / 2
        for xi, f in zip(parts, fam):
            if xi.contains(m):
                pieces.append(f.piece_at(m))
                break
        else:
            raise ValueError(f"cell ({a},{b}) is not covered")
    f = PPFunction.build(region, edges[1:-1], pieces)
    if not f.is_continuous():
        raise ValueError("patches do not agree on their overlaps")
    return f


def glue_tilde_pp(region, parts, fam):
    """Glue classes ``[d^{n_ξ}, f_ξ]`` on a cover of ``region`` into one class ``[d^N, F]``.

    Every patch is lifted to the top order ``N``. Two lifted patches of
    equivalent classes differ on their overlap by a polynomial of degree
    ``< N``; sweeping left to right, each new patch is corrected by that
    polynomial and spliced in.

    Raises
    ------
    ValueError
        If some overlap difference is not a polynomial of degree ``< N``.
    """
    top = max(n for n, _ in fam)
    lifted = sorted(
        ((xi, lift_order(n, f, top)[1]) for xi, (n, f) in zip(parts, fam)),
        key=lambda t: (t[0].left, -t[0].right),
    )
    span, acc = lifted[0]
    for xi, F in lifted[1:]:
        if xi.right <= span.right:
            continue
        if xi.left >= span.right:
            raise ValueError(f"cover has a gap at {span.right}")
        ov = Interval(xi.left, span.right)
        d = poly_difference(acc.restrict(ov), F.restrict(ov), top)
        if d is None:
            raise ValueError(f"patches on {span} and {xi} disagree on {ov}")
        F = F + extend_poly(d, xi)
        new_span = Interval(span.left, xi.right)
        acc = glue_pp(new_span, [span, xi], [acc, F])
        span = new_span
    if span != region:
        raise ValueError(f"patches cover {span}, not {region}")
    return top, acc


def poly_difference(f: PPFunction, g: PPFunction, order: int):
    """``f - g`` if it is a single polynomial of degree ``< order``, else ``None``."""
    d = f - g
    if d.is_polynomial and len(d.pieces[0]) <= order:
        return d.pieces[0]
    return None


def extend_poly(p, J: Interval) -> PPFunction:
    return PPFunction.build(J, (), [p])
