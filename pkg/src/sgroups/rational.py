"""Exact rationals: parsing, formatting and an independent arithmetic oracle."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["Rational", "as_rational", "parse_rational", "fmt_rational", "fraction_oracle"]

Rational = Fraction

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise TypeError(f"not an exact rational: {v!r}")
    return parse_rational(v) if isinstance(v, str) else Fraction(v)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats are rejected to keep everything exact."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    m = _RAT.match(str(text))
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def fmt_rational(q: Fraction, always_ratio: bool = False) -> str:
    q = Fraction(q)
    if always_ratio or q.denominator != 1:
        return f"{q.numerator}/{q.denominator}"
    return str(q.numerator)


def fraction_oracle(op: str, a, b):
    """Reference arithmetic on reduced fractions ``(num, den)``.

    Works on plain integer pairs with its own gcd reduction so that it shares
    no code path with the extension machinery it is used to check.
    """
    an, ad = _pair(a)
    bn, bd = _pair(b)
    if op == "add":
        return _reduce(an * bd + bn * ad, ad * bd)
    if op == "eq":
        return an * bd == bn * ad
    if op == "div":
        if bn == 0:
            raise ZeroDivisionError("fraction_oracle: division by zero")
        return _reduce(an * bd, ad * bn)
    raise ValueError(f"unknown oracle op {op!r}")


def _pair(v):
    if isinstance(v, tuple):
        n, d = v
    else:
        f = as_rational(v)
        n, d = f.numerator, f.denominator
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    return (n, d) if d > 0 else (-n, -d)


def _reduce(n: int, d: int) -> Fraction:
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d) or 1
    return Fraction(n // g, d // g)
