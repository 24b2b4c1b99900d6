"""The integers with the partial division maps ``f_n(m) = m / n`` on ``nℤ``."""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd

from sgroups.algebra import GroupModel, HomOracle, LabelMonoid, SGroup, UsageError
from sgroups.rational import fmt_rational

__all__ = ["make_int_sgroup", "make_rational_sgroup", "int_class_value", "int_label_render"]


def int_label_render(n: int) -> str:
    return "I_G" if n == 1 else f"f_{n}"


def _oracle(n: int) -> HomOracle:
    def apply(m):
        if m % n:
            raise UsageError(f"{m} is not in the domain {n}ℤ of f_{n}")
        return m // n

    return HomOracle(
        in_domain=lambda m: m % n == 0,
        apply=apply,
        preimage=lambda m: n * m,
        in_kernel=lambda m: m == 0,
        kernel_sample=lambda rng: 0,
    )


def _reduce(n, m):
    g = gcd(n, m) or n
    return n // g, m // g


def _encode_ext(n, m):
    return {"n": n, "m": m}


def _decode_ext(obj):
    try:
        n, m = obj["n"], obj["m"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed integer class {obj!r}") from exc
    if not (isinstance(n, int) and isinstance(m, int)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"malformed integer class {obj!r}")
    return n, m


def _decode_elem(obj):
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ValueError(f"not an integer: {obj!r}")
    return obj


def make_int_sgroup(bound: int = 24, max_label: int = 12) -> SGroup:
    """``G = ℤ``, ``H = {f_n : n >= 1}`` with labels multiplying, ``f_1 = I_G``.

    ``bound`` and ``max_label`` only shape the audit samplers.
    """
    group = GroupModel(
        eq=operator.eq,
        zero=0,
        add=operator.add,
        neg=operator.neg,
        sample=lambda rng: rng.randint(-bound, bound),
        render=str,
    )
    monoid = LabelMonoid(
        name="int",
        compose=operator.mul,
        identity=1,
        sample=lambda rng: rng.randint(1, max_label),
        render=int_label_render,
        contains=lambda n: isinstance(n, int) and not isinstance(n, bool) and n >= 1,
    )
    hooks = {
        "encode": lambda m: m,
        "decode": _decode_elem,
        "encode_ext": _encode_ext,
        "decode_ext": _decode_ext,
        "reduce": _reduce,
        "ext_suffix": lambda n, m: f" ≙ {fmt_rational(Fraction(m, n))}",
        "labels": lambda cap: range(1, cap + 1),
    }
    return SGroup("int", group, monoid, _oracle, model="int", hooks=hooks)


def int_class_value(a) -> Fraction:
    """The rational ``m / n`` attached to a class ``[f_n, m]``."""
    return Fraction(a.elem, a.hom)


def make_rational_sgroup(max_den: int = 12, bound: int = 24) -> SGroup:
    """``G = ℚ`` with the total division maps ``q ↦ q / n``; used as an isomorphism target."""

    def sample(rng):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))

    group = GroupModel(
        eq=operator.eq,
        zero=Fraction(0),
        add=operator.add,
        neg=operator.neg,
        sample=sample,
        render=fmt_rational,
    )
    monoid = LabelMonoid(
        name="int",
        compose=operator.mul,
        identity=1,
        sample=lambda rng: rng.randint(1, max_den),
        render=int_label_render,
        contains=lambda n: isinstance(n, int) and not isinstance(n, bool) and n >= 1,
    )

    def oracle(n):
        return HomOracle(
            in_domain=lambda q: True,
            apply=lambda q: Fraction(q) / n,
            preimage=lambda q: Fraction(q) * n,
            in_kernel=lambda q: q == 0,
            kernel_sample=lambda rng: Fraction(0),
        )

    return SGroup("rat", group, monoid, oracle, model="rat", hooks={"labels": lambda cap: range(1, cap + 1)})
