"""Exact univariate polynomials as trimmed tuples of Fractions (ascending powers).

Products and division delegate to ``numpy.polynomial`` on object arrays,
which keeps Fraction coefficients exact. The linear-time operations (sums,
derivatives, antiderivatives, Horner evaluation) are written out because the
array round trip costs more than the arithmetic itself.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

import numpy as np
from numpy.polynomial import polynomial as P

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def trim(coeffs) -> Poly:
    c = [v if type(v) is Fraction else Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _arr(c: Poly):
    return np.array(c if c else (Fraction(0),), dtype=object)


def add(a: Poly, b: Poly) -> Poly:
    return trim(x + y for x, y in zip_longest(a, b, fillvalue=Fraction(0)))


def sub(a: Poly, b: Poly) -> Poly:
    return trim(x - y for x, y in zip_longest(a, b, fillvalue=Fraction(0)))


def neg(a: Poly) -> Poly:
    return tuple(-v for v in a)


def scale(a: Poly, q) -> Poly:
    q = Fraction(q)
    return trim(v * q for v in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    return trim(P.polymul(_arr(a), _arr(b)))


def deriv(a: Poly, m: int = 1) -> Poly:
    if m == 0:
        return a
    if len(a) <= m:
        return ZERO
    out = []
    for k in range(m, len(a)):
        f = 1
        for j in range(k - m + 1, k + 1):
            f *= j
        out.append(a[k] * f)
    return tuple(out)


def integ(a: Poly) -> Poly:
    """Antiderivative with zero constant term."""
    if not a:
        return ZERO
    return (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(a))


def evaluate(a: Poly, x) -> Fraction:
    if not a:
        return Fraction(0)
    x = x if type(x) is Fraction else Fraction(x)
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power_of_linear(c, k: int) -> Poly:
    """``(x - c)**k``."""
    out = ONE
    lin = (Fraction(-c), Fraction(1))
    for _ in range(k):
        out = mul(out, lin)
    return out


def degree(a: Poly) -> int:
    return len(a) - 1


def root_multiplicity(a: Poly, c, cap: int | None = None) -> int:
    """Multiplicity of ``c`` as a root of ``a`` (``a`` nonzero), counted up to ``cap``."""
    c = Fraction(c)
    k = 0
    coeffs = list(a)
    while coeffs and (cap is None or k < cap):
        # synthetic division by (x - c), highest power first
        acc, quot = Fraction(0), []
        for v in reversed(coeffs):
            acc = acc * c + v
            quot.append(acc)
        if acc != 0:
            break
        coeffs = quot[-2::-1]
        k += 1
    return k


def render(a: Poly, var: str = "x") -> str:
    from sgroups.rational import fmt_rational

    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = fmt_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{fmt_rational(mag)}*{mono}"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
