"""Transcripts printed by ``sgroups demo``."""

from __future__ import annotations

import itertools
from fractions import Fraction

from sgroups.extension import ExtSGroup
from sgroups.models.integer import int_class_value, make_int_sgroup
from sgroups.models.pp import ModelDescriptor
from sgroups.models.ppfunc import pp_abs, pp_poly
from sgroups.regions import Interval
from sgroups.spaces import Cover, five_region_sspace
from sgroups.tess import bar_glue, bar_restrict, build_bar, build_tilde

__all__ = ["DEMOS", "run_demo", "zq_enumeration"]


def zq_enumeration(max_den: int = 12, bound: int = 24, value_bound: int = 2) -> dict:
    """Enumerate ``[f_n, m]`` and compare with reduced fractions.

    Returns the table rows and one boolean per property.
    """
    e = ExtSGroup(make_int_sgroup())
    classes = [(n, m, e.pair(n, m)) for n in range(1, max_den + 1) for m in range(-bound, bound + 1)]
    well_defined = injective = True
    for (n1, m1, a), (n2, m2, b) in itertools.combinations(classes, 2):
        same = a == b
        if same and Fraction(m1, n1) != Fraction(m2, n2):
            well_defined = False
        if not same and Fraction(m1, n1) == Fraction(m2, n2):
            injective = False
    values = {int_class_value(x) for _, _, x in classes}
    targets = {Fraction(p, q) for q in range(1, max_den + 1)
               for p in range(-value_bound * q, value_bound * q + 1)}
    surjective = targets <= values
    additive = all(int_class_value(a + b) == int_class_value(a) + int_class_value(b)
                   for (_, _, a), (_, _, b) in itertools.islice(itertools.combinations(classes, 2), 0, None, 97))
    division = all(int_class_value(e.prolong(k, x)) == int_class_value(x) / k
                   for k in range(1, max_den + 1) for _, _, x in classes[::7])
    rows, seen = [], set()
    for n in range(1, max_den + 1):
        vals = {Fraction(m, n) for m in range(-bound, bound + 1)}
        new = vals - seen
        seen |= vals
        rows.append((n, 2 * bound + 1, len(new), sum(1 for v in new if v.denominator == n)))
    return {"rows": rows, "classes": len(classes), "values": len(values), "targets": len(targets),
            "well_defined": well_defined, "injective": injective, "surjective": surjective,
            "additive": additive, "division": division}


def demo_zq() -> str:
    r = zq_enumeration()
    out = ["Integers with the partial divisions f_n(m) = m/n on nℤ, extended.",
           "Classes [f_n, m] for 1 <= n <= 12 and |m| <= 24, sent to m/n:", "",
           "   n  pairs  new values  with denominator n"]
    out += [f"  {n:>2}  {k:>5}  {new:>10}  {red:>18}" for n, k, new, red in r["rows"]]
    out += ["",
            f"{r['classes']} pairs, {r['values']} distinct values.",
            f"well-defined (equivalent pairs give equal fractions): {r['well_defined']}",
            f"injective on classes: {r['injective']}",
            f"every reduced fraction with denominator <= 12 and |q| <= 2 is hit "
            f"({r['targets']} targets): {r['surjective']}",
            f"class addition is fraction addition: {r['additive']}",
            f"prolonged f_k is division by k: {r['division']}"]
    ok = all(r[k] for k in ("well_defined", "injective", "surjective", "additive", "division"))
    a = ExtSGroup(make_int_sgroup()).pair(2, 1) + ExtSGroup(make_int_sgroup()).pair(3, 1)
    out += ["", f"example: [f_2, 1] + [f_3, 1] = {a.owner.render(a)}", "",
            "isomorphism verified" if ok else "isomorphism FAILED"]
    return "\n".join(out)


def _pp5():
    caps = ModelDescriptor("pp", max_order=2, max_degree=2, max_breaks=2)
    t = build_tilde(five_region_sspace(caps), samples=10)
    return t, build_bar(t)


def _show(e, x) -> str:
    k, f = e.reduce(x)
    if k == 0:
        return f"{f.render()}  (a continuous function)"
    return f"D^{k}[{f.render()}]  (not a continuous function)"


def demo_delta() -> str:
    t, _ = _pp5()
    J, right = Interval(0, 3), Interval(1, 2)
    e = t.ext[J]
    f = pp_abs(J, 1)
    d1, d2 = e.prolong(1, e.embed(f)), e.prolong(2, e.embed(f))
    out = [f"On {J}: f = {f.render()}, continuous with a kink at 1.", "",
           f"D^1 f = {_show(e, d1)}",
           f"D^2 f = {_show(e, d2)}   this class is 2δ₁", ""]
    for r in (Interval(0, 2), Interval(1, 3), right):
        er = t.ext[r]
        out.append(f"restricted to {r}:  D^1 f -> {_show(er, t.restrict(r, J, d1))};"
                   f"  D^2 f -> {_show(er, t.restrict(r, J, d2))}")
    lin = t.ext[right].prolong(1, t.ext[right].embed(pp_poly(right, (-1, 1))))
    out += ["", f"D^1 (x - 1) on {right} = {_show(t.ext[right], lin)}",
            f"and D^1 f restricted to {right} equals it: {t.restrict(right, J, d1) == lin}"]
    return "\n".join(out)


def demo_glue() -> str:
    t, bs = _pp5()
    J, left, right, mid = Interval(0, 3), Interval(0, 2), Interval(1, 3), Interval(1, 2)
    a = t.ext[left].prolong(2, t.ext[left].embed(pp_abs(left, 1)))
    z = t.ext[right].zero
    fam = [bs.embed(left, a), bs.embed(right, z)]
    out = ["A family on the cover {(0,2), (1,3)} of (0,3):",
           f"  on {left}: {_show(t.ext[left], a)}",
           f"  on {right}: 0", "",
           f"overlap {mid}: the first patch restricts to {_show(t.ext[mid], t.restrict(mid, left, a))}",
           f"overlap {mid}: the second patch restricts to 0",
           f"agree: {bar_restrict(fam[0], mid) == bar_restrict(fam[1], mid)}", ""]
    g = bar_glue(bs, Cover(J, (left, right)), fam)
    whole = t.ext[J].prolong(2, t.ext[J].embed(pp_abs(J, 1)))
    same = g == bs.embed(J, whole)
    back = bs.as_tilde(g)
    out += [f"glued: {bs.render(g)}",
            f"equal to b(D^2 |x - 1| on {J}) = 2δ₁: {same}",
            f"recovered first-extension class: {_show(t.ext[J], back) if back is not None else 'none'}"]
    return "\n".join(out)


DEMOS = {"zq": demo_zq, "delta": demo_delta, "glue": demo_glue}


def run_demo(name: str) -> str:
    if name not in DEMOS:
        raise KeyError(name)
    return DEMOS[name]()
