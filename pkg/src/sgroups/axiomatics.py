"""Executable axiom lists for distributions of the first and second species.

A :class:`CandidateStructure` presents a proposed carrier over a base
S-space: equality, addition, an embedding of the base individuals, derivative
maps ``Φ̂`` for every label, restrictions, and the witnesses the existential
axioms ask for (a decomposition ``x = Φ̂(g)``, local patches, gluing).
:func:`check_full` and :func:`check_simplified` turn each axiom into a
sampled check and return one :class:`AxiomVerdict` per axiom.

Six axiom systems are available, named by their identifiers:

========  ===============================================  ==========
system    structure                                        variant
========  ===============================================  ==========
``2.20``  one S-group, first species                       full
``2.25``  one S-group, first species                       simplified
``5.12``  S-space, first species                           full
``5.17``  S-space, first species                           simplified
``5.21``  S-space, second species                          full
``5.28``  S-space, second species                          simplified
========  ===============================================  ==========

The simplified systems drop the addition axiom; the checker rebuilds an
addition from the remaining data and compares it with the native one.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Optional

from sgroups.algebra import Auditor, GroupModel, LabelMonoid, SGroup, UsageError, _domain_element
from sgroups.extension import ExtSGroup, prolong_apply
from sgroups.regions import EMPTY, FinSet, Interval, intersect, is_subset, region_key
from sgroups.spaces import Cover, SSpace, generated_sspace, glue as space_glue
from sgroups.tess import BarSpace, TildeSpace, bar_glue, bar_prolong, bar_restrict

__all__ = [
    "CandidateStructure",
    "AxiomVerdict",
    "VerdictReport",
    "candidate_from_ext",
    "candidate_from_tilde",
    "candidate_from_bar",
    "check_full",
    "check_simplified",
    "check_system",
    "mutate",
    "mutate_sgroup",
    "MUTATIONS",
    "FULL",
    "SIMPLIFIED",
    "PARTNER",
]

FULL = ("2.20", "5.12", "5.21")
SIMPLIFIED = ("2.25", "5.17", "5.28")
PARTNER = {"2.20": "2.25", "2.25": "2.20", "5.12": "5.17", "5.17": "5.12", "5.21": "5.28", "5.28": "5.21"}
MUTATIONS = ("strictness", "closedness", "restriction-composition", "bonding-composition",
             "glue-uniqueness", "identity")


@dataclass(frozen=True, eq=False)
class CandidateStructure:
    """A proposed distribution structure over ``base``.

    Every callable takes the region first. ``decompose(γ, x)`` returns
    ``(Φ, g)`` with ``x = Φ̂(g)`` or ``None``; ``local_patch(γ, x, point)``
    returns ``(γ′, Φ, g)`` with ``point ∈ γ′`` and ``x|γ′ = Φ̂(g)``;
    ``as_base(γ, x)`` returns the individual ``g`` with ``x = g`` or ``None``.
    """

    name: str
    kind: str
    base: SSpace
    eq: Callable
    add: Callable
    neg: Callable
    zero: Callable
    embed: Callable
    der: Callable
    restrict: Callable
    bond: Callable
    domain: Callable
    sample: Callable
    decompose: Callable
    local_patch: Callable
    as_base: Callable
    glue: Optional[Callable] = None
    render: Callable = lambda region, x: str(x)
    notes: dict = field(default_factory=dict)

    @property
    def regions(self):
        return self.base.regions


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    samples: int
    seed: int
    counterexample: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"axiom": self.axiom, "pass": self.passed}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        d["samples"] = self.samples
        return d


@dataclass(frozen=True)
class VerdictReport:
    system: str
    seed: int
    samples: int
    verdicts: tuple

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failing(self) -> list:
        return [v.axiom for v in self.verdicts if not v.passed]

    def __getitem__(self, axiom) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def __iter__(self):
        return iter(self.verdicts)

    def __len__(self):
        return len(self.verdicts)

    def to_dict(self) -> dict:
        return {"system": self.system, "seed": self.seed, "samples": self.samples,
                "verdicts": [v.to_dict() for v in self.verdicts]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def __str__(self):
        lines = [f"axioms {self.system} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'}"]
        for v in self.verdicts:
            tail = f"  <- {v.counterexample}" if v.counterexample else ""
            lines.append(f"  [{'ok  ' if v.passed else 'FAIL'}] {v.axiom}{tail}")
        return "\n".join(lines)


# candidates from the constructions


def _ext_parts(e: ExtSGroup):
    return dict(
        eq=lambda r, x, y: x == y,
        add=lambda r, x, y: x + y,
        neg=lambda r, x: -x,
        zero=lambda r: e.zero,
        embed=lambda r, g: e.embed(g),
        der=lambda r, lab, x: prolong_apply(lab, x),
        as_base=lambda r, x: e.as_base(x),
        decompose=lambda r, x: (x.hom, x.elem),
        render=lambda r, x: e.render(x),
    )


def candidate_from_ext(e: ExtSGroup) -> CandidateStructure:
    """The extension of one S-group, over its generated S-space."""
    base = generated_sspace(e.base)
    (ground,) = base.regions
    parts = _ext_parts(e)
    return CandidateStructure(
        name=f"ext({e.base.key})",
        kind="ext",
        base=base,
        restrict=lambda p, q, x: x,
        bond=base.bond,
        domain=lambda x: ground,
        sample=lambda r, rng: e.respell(e.sample(rng), rng) if rng.random() < 0.3 else e.sample(rng),
        local_patch=lambda r, x, pt: (r, x.hom, x.elem),
        glue=lambda r, cover, fam: fam[cover.parts.index(r)] if r in cover.parts else None,
        **parts,
    )


def candidate_from_tilde(t: TildeSpace, with_glue: bool = False) -> CandidateStructure:
    """The first extension of an S-space.

    With ``with_glue`` the first extension's own gluing is exposed, so the
    second-species axioms can be probed against it.
    """
    ext = t.ext

    def glue(r, cover, fam):
        return space_glue(t.space, cover, fam)

    return CandidateStructure(
        name=f"tilde({t.base.name})",
        kind="tilde",
        base=t.base,
        eq=lambda r, x, y: x == y,
        add=lambda r, x, y: x + y,
        neg=lambda r, x: -x,
        zero=lambda r: ext[r].zero,
        embed=lambda r, g: ext[r].embed(g),
        der=lambda r, lab, x: prolong_apply(lab, x),
        restrict=t.restrict,
        bond=t.bond,
        domain=lambda x: x.owner.region,
        sample=t.sample,
        decompose=lambda r, x: (x.hom, x.elem),
        local_patch=lambda r, x, pt: (r, x.hom, x.elem),
        as_base=lambda r, x: ext[r].as_base(x),
        glue=glue if with_glue else None,
        render=lambda r, x: ext[r].render(x),
    )


def candidate_from_bar(bs: BarSpace) -> CandidateStructure:
    """The second extension of an S-space."""
    t = bs.tilde
    ext = t.ext

    def as_base(r, x):
        g = bs.as_tilde(x)
        return None if g is None else ext[r].as_base(g)

    def decompose(r, x):
        g = bs.as_tilde(x)
        return None if g is None else (g.hom, g.elem)

    def local_patch(r, x, pt):
        for xi, a in x.family.items():
            if xi.contains(pt):
                return xi, a.hom, a.elem
        return None

    return CandidateStructure(
        name=f"bar({t.base.name})",
        kind="bar",
        base=t.base,
        eq=lambda r, x, y: x == y,
        add=lambda r, x, y: x + y,
        neg=lambda r, x: -x,
        zero=bs.zero,
        embed=lambda r, g: bs.embed_base(r, g),
        der=lambda r, lab, x: bar_prolong(lab, x),
        restrict=lambda p, q, x: x if p == q else bar_restrict(x, p),
        bond=t.bond,
        domain=lambda x: x.region,
        sample=bs.sample,
        decompose=decompose,
        local_patch=local_patch,
        as_base=as_base,
        glue=lambda r, cover, fam: bar_glue(bs, cover, fam),
        render=lambda r, x: bs.render(x),
    )


# mutations


@dataclass(frozen=True, eq=False)
class Tagged:
    """A candidate element with an extra integer tag the base structure cannot see."""

    inner: Any
    tag: int

    def __str__(self):
        return f"{self.inner}#{self.tag}"


def _non_identity_label(s: SGroup):
    rng = random.Random(0)
    for _ in range(100):
        lab = s.monoid.sample(rng)
        if lab != s.identity:
            return lab
    raise UsageError(f"{s.key} has no label besides the identity")


def _proper(p, q):
    return p != q and p is not EMPTY


def _tagged(c: CandidateStructure, glue_drops_tag: bool) -> dict:
    """Carrier ``(x, t)`` with ``t ∈ ℤ``; everything but the maps named below ignores ``t``."""
    proper = [(p, q) for (p, q) in c.base.indexer.delta() if _proper(p, q)]

    def eq(r, x, y):
        return x.tag == y.tag and c.eq(r, x.inner, y.inner)

    def restrict(p, q, x):
        keep = 0 if (glue_drops_tag and (p, q) in proper) or p is EMPTY else x.tag
        return Tagged(c.restrict(p, q, x.inner), keep)

    def glue(r, cover, fam):
        inner = c.glue(r, cover, [f.inner for f in fam])
        if glue_drops_tag:
            return Tagged(inner, 0)
        tags = {f.tag for f in fam}
        return Tagged(inner, tags.pop() if len(tags) == 1 else 0)

    def local_patch(r, x, pt):
        return c.local_patch(r, x.inner, pt)

    def sample(r, rng):
        return Tagged(c.sample(r, rng), 0 if r is EMPTY else rng.choice((-1, 0, 1, 2)))

    return dict(
        eq=eq,
        add=lambda r, x, y: Tagged(c.add(r, x.inner, y.inner), x.tag + y.tag),
        neg=lambda r, x: Tagged(c.neg(r, x.inner), -x.tag),
        zero=lambda r: Tagged(c.zero(r), 0),
        embed=lambda r, g: Tagged(c.embed(r, g), 0),
        der=lambda r, lab, x: Tagged(c.der(r, lab, x.inner), x.tag),
        restrict=restrict,
        domain=lambda x: c.domain(x.inner),
        sample=sample,
        decompose=lambda r, x: c.decompose(r, x.inner),
        local_patch=local_patch,
        as_base=lambda r, x: c.as_base(r, x.inner) if x.tag == 0 else None,
        glue=glue if c.glue else None,
        render=lambda r, x: f"{c.render(r, x.inner)} #{x.tag}",
    )


def mutate(c: CandidateStructure, kind: str) -> CandidateStructure:
    """A minimally perturbed candidate violating the named property class.

    ``strictness``
        ``Φ̂`` sends individuals outside the domain of ``Φ`` to zero.
    ``closedness``
        The carrier gains an integer tag that derivatives of individuals never carry.
    ``restriction-composition``
        Proper restrictions are doubled, so chains no longer compose
        (the single restriction is doubled when there is no proper pair).
    ``bonding-composition``
        The bonding used to transport labels under restriction is distorted.
    ``glue-uniqueness``
        A tag survives only the identity restrictions and gluing forgets it.
    ``identity``
        ``Î`` is replaced by the derivative of a non-identity label.
    """
    if kind not in MUTATIONS:
        raise UsageError(f"unknown mutation {kind!r}; expected one of {', '.join(MUTATIONS)}")
    name = f"{c.name}+{kind}"
    if kind == "strictness":
        def der(r, lab, x):
            g = c.as_base(r, x)
            if g is not None and not c.base.group(r).oracle(lab).in_domain(g):
                return c.zero(r)
            return c.der(r, lab, x)

        return replace(c, name=name, der=der)
    if kind == "closedness":
        return replace(c, name=name, kind=c.kind, **_tagged(c, glue_drops_tag=False))
    if kind == "glue-uniqueness":
        return replace(c, name=name, **_tagged(c, glue_drops_tag=True))
    if kind == "restriction-composition":
        proper = [(p, q) for (p, q) in c.base.indexer.delta() if _proper(p, q)]
        doubled = set(proper) if proper else {(c.base.ground, c.base.ground)}

        def restrict(p, q, x):
            y = c.restrict(p, q, x)
            return c.add(p, y, y) if (p, q) in doubled else y

        return replace(c, name=name, restrict=restrict)
    if kind == "bonding-composition":
        proper = [(p, q) for (p, q) in c.base.indexer.delta() if _proper(p, q)]
        model = c.base.group(c.base.ground).model
        if proper and model in ("pp", "ext-pp"):
            def bond(p, q, lab):
                b = c.bond(p, q, lab)
                return 2 * b if (p, q) in proper else b
        elif model in ("int", "rat"):
            def bond(p, q, lab):
                return c.bond(p, q, lab) ** 2
        else:
            s = c.base.group(c.base.ground)
            shift = _non_identity_label(s)

            def bond(p, q, lab):
                return s.compose(shift, c.bond(p, q, lab))

        return replace(c, name=name, bond=bond)
    # identity
    ground = c.base.group(c.base.ground)
    other = _non_identity_label(ground)

    def der(r, lab, x):
        s = c.base.group(r)
        return c.der(r, other if lab == s.identity else lab, x)

    return replace(c, name=name, der=der)


def mutate_sgroup(s: SGroup, kind: str = "identity") -> SGroup:
    """S-group level mutation: ``identity`` removes ``I_G`` from ``H`` while still claiming it."""
    if kind != "identity":
        raise UsageError("only the identity mutation acts on a bare S-group")
    m = s.monoid
    rng = random.Random(0)
    nonid = [lab for lab in (m.sample(rng) for _ in range(50)) if lab != m.identity]
    monoid = LabelMonoid(
        name=m.name,
        compose=m.compose,
        identity=None,
        sample=lambda r: r.choice(nonid),
        render=m.render,
        contains=lambda lab: lab != m.identity and m.contains(lab),
    )
    return replace(s, key=f"{s.key}-noid", monoid=monoid, _cache={})


# the axiom checks


class _Checker:
    def __init__(self, c: CandidateStructure, system: str, samples: int, seed: int):
        self.c = c
        self.system = system
        self.samples = samples
        self.seed = seed
        self.verdicts: list = []
        self.regions = list(c.regions)
        self.nonempty = [r for r in self.regions if r is not EMPTY] or self.regions
        self.delta = list(c.base.indexer.delta())
        self.proper = [(p, q) for (p, q) in self.delta if _proper(p, q)]
        self.chains = [(a, b, d) for (a, b) in self.delta for (b2, d) in self.delta if b2 == b]
        self.strict_chains = [(a, b, d) for (a, b, d) in self.chains if _proper(a, b) and _proper(b, d)]

    # plumbing

    def run(self, axiom, draw, test, n=None):
        n = self.samples if n is None else n
        aud = Auditor(axiom, self.seed + len(self.verdicts), self._show)
        aud.check(axiom, n, draw, test)
        ch = aud.checks[0]
        self.verdicts.append(AxiomVerdict(f"{self.system}/{axiom}", ch.passed, ch.samples, self.seed,
                                          ch.counterexample))

    def _show(self, v):
        if isinstance(v, (str, int)) or v is None:
            return str(v)
        if isinstance(v, (Interval, FinSet)) or v is EMPTY:
            return f"@{v}"
        try:
            return str(v)
        except Exception:
            return repr(v)

    def G(self, r) -> GroupModel:
        return self.c.base.group(r).group

    def S(self, r) -> SGroup:
        return self.c.base.group(r)

    def pair(self, rng):
        """A pair of ``Δ(I)``, proper half of the time when proper pairs exist."""
        if self.proper and rng.random() < 0.5:
            return rng.choice(self.proper)
        return rng.choice(self.delta)

    def region(self, rng):
        return rng.choice(self.regions)

    def label(self, r, rng):
        return self.S(r).monoid.sample(rng)

    def el(self, r, rng):
        return self.c.sample(r, rng)

    # axioms

    def individuals(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.G(r).sample(rng), self.G(r).sample(rng)

        def test(r, g, h):
            G = self.G(r)
            back = c.as_base(r, c.embed(r, g))
            return (c.eq(r, c.embed(r, g), c.embed(r, h)) == G.eq(g, h)
                    and back is not None and G.eq(back, g))

        self.run(axiom, draw, test)

    def domain(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.el(r, rng), self.G(r).sample(rng)

        self.run(axiom, draw, lambda r, x, g: c.domain(x) == r and c.domain(c.embed(r, g)) == r)

    def addition(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return (r, self.el(r, rng), self.el(r, rng), self.el(r, rng),
                    self.G(r).sample(rng), self.G(r).sample(rng))

        def test(r, x, y, z, g, h):
            G, e = self.G(r), c.embed
            return (c.eq(r, e(r, G.add(g, h)), c.add(r, e(r, g), e(r, h)))
                    and c.eq(r, c.add(r, c.add(r, x, y), z), c.add(r, x, c.add(r, y, z)))
                    and c.eq(r, c.add(r, x, y), c.add(r, y, x))
                    and c.eq(r, c.add(r, x, c.zero(r)), x)
                    and c.eq(r, c.add(r, x, c.neg(r, x)), c.zero(r)))

        self.run(axiom, draw, test)

    def der_hom(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.label(r, rng), self.el(r, rng), self.el(r, rng)

        self.run(axiom, draw, lambda r, lab, x, y: c.eq(
            r, c.der(r, lab, c.add(r, x, y)), c.add(r, c.der(r, lab, x), c.der(r, lab, y))))

    def der_extends(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            lab = self.label(r, rng) if rng.random() < 0.7 else self.S(r).identity
            return r, lab, _domain_element(self.S(r), lab, rng)

        self.run(axiom, draw, lambda r, lab, g: c.eq(
            r, c.der(r, lab, c.embed(r, g)), c.embed(r, self.S(r).oracle(lab).apply(g))))

    def der_iso(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.label(r, rng), self.label(r, rng), self.el(r, rng)

        def test(r, p, q, x):
            s = self.S(r)
            return c.eq(r, c.der(r, s.compose(p, q), x), c.der(r, p, c.der(r, q, x)))

        self.run(axiom, draw, test)

    def strict(self, axiom, probes: int = 6):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            lab = self.label(r, rng)
            s = self.S(r)
            g = s.kernel_sample(lab, rng) if rng.random() < 0.3 else s.group.sample(rng)
            return r, lab, g, [s.group.zero] + [s.group.sample(rng) for _ in range(probes)]

        def test(r, lab, g, hs):
            o = self.S(r).oracle(lab)
            img = c.der(r, lab, c.embed(r, g))
            if (c.eq(r, img, c.zero(r))) != o.in_kernel(g):
                return False
            if o.in_domain(g):
                return True
            back = c.as_base(r, img)
            return back is None and all(not c.eq(r, img, c.embed(r, h)) for h in hs)

        self.run(axiom, draw, test)

    def closed(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.el(r, rng)

        def test(r, x):
            d = c.decompose(r, x)
            return d is not None and c.eq(r, x, c.der(r, d[0], c.embed(r, d[1])))

        self.run(axiom, draw, test)

    def kernel_bicond(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            s = self.S(r)
            lab = self.label(r, rng)
            g = s.group.sample(rng)
            u = rng.random()
            if u < 0.35:
                h = s.group.add(g, s.kernel_sample(lab, rng))
            elif u < 0.6:
                h = s.group.zero
            else:
                h = s.group.sample(rng)
            return r, lab, g, h

        def test(r, lab, g, h):
            s = self.S(r)
            lhs = c.eq(r, c.der(r, lab, c.embed(r, g)), c.der(r, lab, c.embed(r, h)))
            return lhs == s.oracle(lab).in_kernel(s.group.sub(g, h))

        self.run(axiom, draw, test)

    def res_hom(self, axiom):
        c = self.c

        def draw(rng):
            p, q = self.pair(rng)
            return p, q, self.el(q, rng), self.el(q, rng)

        self.run(axiom, draw, lambda p, q, x, y: c.eq(
            p, c.restrict(p, q, c.add(q, x, y)), c.add(p, c.restrict(p, q, x), c.restrict(p, q, y))))

    def res_extends(self, axiom):
        c = self.c
        b = c.base

        def draw(rng):
            p, q = self.pair(rng)
            return p, q, self.G(q).sample(rng)

        self.run(axiom, draw, lambda p, q, g: c.eq(
            p, c.restrict(p, q, c.embed(q, g)), c.embed(p, b.restrict(p, q, g))))

    def res_comp(self, axiom):
        c = self.c

        def draw(rng):
            pool = self.strict_chains if self.strict_chains and rng.random() < 0.5 else self.chains
            a, b, d = rng.choice(pool)
            return a, b, d, self.el(d, rng)

        self.run(axiom, draw, lambda a, b, d, x: c.eq(
            a, c.restrict(a, b, c.restrict(b, d, x)), c.restrict(a, d, x)))

    def res_inter(self, axiom):
        c = self.c

        def draw(rng):
            p, q = self.pair(rng)
            return p, q, self.label(q, rng), self.el(q, rng)

        self.run(axiom, draw, lambda p, q, lab, x: c.eq(
            p, c.restrict(p, q, c.der(q, lab, x)), c.der(p, c.bond(p, q, lab), c.restrict(p, q, x))))

    def local_closed(self, axiom):
        c = self.c

        def draw(rng):
            r = rng.choice(self.nonempty)
            return r, self.el(r, rng), r.sample_point(rng, 8)

        def test(r, x, pt):
            w = c.local_patch(r, x, pt)
            if w is None:
                return False
            xi, lab, g = w
            return (xi.contains(pt) and is_subset(xi, r)
                    and c.eq(xi, c.restrict(xi, r, x), c.der(xi, lab, c.embed(xi, g))))

        self.run(axiom, draw, test)

    def gluing(self, axiom):
        c = self.c
        if c.glue is None:
            self.verdicts.append(AxiomVerdict(f"{self.system}/{axiom}", False, 0, self.seed,
                                              "candidate offers no gluing"))
            return
        covers = {r: c.base.covers(r) for r in self.regions}

        def draw(rng):
            r = rng.choice(self.nonempty)
            return r, self.el(r, rng), self.el(r, rng), rng.choice(covers[r])

        def test(r, x, d, cover):
            fam = [c.restrict(p, r, x) for p in cover.parts]
            g = c.glue(r, cover, fam)
            if g is None:
                return False
            if not all(c.eq(p, c.restrict(p, r, g), f) for p, f in zip(cover.parts, fam)):
                return False
            if not c.eq(r, g, x):
                return False
            y = c.add(r, x, d)
            if c.eq(r, y, x):
                return True
            return any(not c.eq(p, c.restrict(p, r, y), f) for p, f in zip(cover.parts, fam))

        self.run(axiom, draw, test)

    # derived additions

    def _local_sum(self, r, x, y):
        """The unique addition built from decompositions: ``[ΦΨ](Ψ⁻¹g + Φ⁻¹h)``."""
        c = self.c
        dx, dy = c.decompose(r, x), c.decompose(r, y)
        if dx is None or dy is None:
            return None
        return self._sum_of(r, dx, dy)

    def _sum_of(self, r, dx, dy):
        c, s = self.c, self.S(r)
        (p, g), (q, h) = dx, dy
        w = s.group.add(s.oracle(q).preimage(g), s.oracle(p).preimage(h))
        return c.der(r, s.compose(p, q), c.embed(r, w))

    def derived_addition(self, axiom):
        c = self.c

        def draw(rng):
            r = self.region(rng)
            return r, self.el(r, rng), self.el(r, rng)

        def test(r, x, y):
            s = self._local_sum(r, x, y)
            return s is not None and c.eq(r, s, c.add(r, x, y))

        self.run(axiom, draw, test)

    def derived_addition_local(self, axiom):
        """Local patches at atom points, local sums on every overlap, glued."""
        c = self.c
        b = c.base

        def atoms(r):
            if isinstance(r, FinSet):
                return list(r.points)
            cuts = {r.left, r.right}
            for q in b.indexer.gamma(r):
                if isinstance(q, Interval):
                    cuts.update((q.left, q.right))
            cuts = sorted(cuts)
            inner = [e for e in cuts if r.contains(e)]
            mids = [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
            return inner + mids

        def draw(rng):
            r = self.region(rng)
            return r, self.el(r, rng), self.el(r, rng)

        def test(r, x, y):
            if r is EMPTY:
                return c.eq(r, c.add(r, x, y), c.zero(r))
            px, py = {}, {}
            for pt in atoms(r):
                for store, v in ((px, x), (py, y)):
                    w = c.local_patch(r, v, pt)
                    if w is None:
                        return False
                    store.setdefault(w[0], (w[1], w[2]))
            parts, fam = [], []
            for xi, (p, g) in sorted(px.items(), key=lambda kv: region_key(kv[0])):
                for eta, (q, h) in sorted(py.items(), key=lambda kv: region_key(kv[0])):
                    z = intersect(xi, eta)
                    if z is EMPTY or z in parts:
                        continue
                    dz = (b.bond(z, xi, p), b.restrict(z, xi, g))
                    ez = (b.bond(z, eta, q), b.restrict(z, eta, h))
                    parts.append(z)
                    fam.append(self._sum_of(z, dz, ez))
            if c.glue is None:
                return False
            glued = c.glue(r, Cover(r, parts), fam)
            return glued is not None and c.eq(r, glued, c.add(r, x, y))

        self.run(axiom, draw, test)


_AXIOMS = {
    "2.20": [
        ("Axiom 1", "individuals"),
        ("Axiom 2", "addition"),
        ("Axiom 3(a)", "der_hom"),
        ("Axiom 3(b)", "der_extends"),
        ("Axiom 3(c)", "der_iso"),
        ("Axiom 4", "strict"),
        ("Axiom 5", "closed"),
    ],
    "2.25": [
        ("Axiom 1", "individuals"),
        ("Axiom 2(a)", "der_extends"),
        ("Axiom 2(b)", "der_iso"),
        ("Axiom 3", "closed"),
        ("Axiom 4", "kernel_bicond"),
        ("derived addition", "derived_addition"),
    ],
    "5.12": [
        ("Axiom 1", "individuals"),
        ("Axiom 2", "domain"),
        ("Axiom 3", "addition"),
        ("Axiom 4(4-1)", "der_hom"),
        ("Axiom 4(4-2)", "der_extends"),
        ("Axiom 4(4-3)", "der_iso"),
        ("Axiom 5", "strict"),
        ("Axiom 6", "closed"),
        ("Axiom 7(7-1)", "res_hom"),
        ("Axiom 7(7-2)", "res_extends"),
        ("Axiom 7(7-3)", "res_comp"),
        ("Axiom 7(7-4)", "res_inter"),
    ],
    "5.17": [
        ("Axiom 1", "individuals"),
        ("Axiom 2", "domain"),
        ("Axiom 3(3-1)", "der_extends"),
        ("Axiom 3(3-2)", "der_iso"),
        ("Axiom 4", "closed"),
        ("Axiom 5", "kernel_bicond"),
        ("Axiom 6(6-1)", "res_extends"),
        ("Axiom 6(6-2)", "res_comp"),
        ("Axiom 6(6-3)", "res_inter"),
        ("derived addition", "derived_addition"),
    ],
    "5.21": [
        ("Axiom 1", "individuals"),
        ("Axiom 2", "domain"),
        ("Axiom 3", "addition"),
        ("Axiom 4(4-1)", "der_hom"),
        ("Axiom 4(4-2)", "der_extends"),
        ("Axiom 4(4-3)", "der_iso"),
        ("Axiom 5", "strict"),
        ("Axiom 6(6-1)", "res_hom"),
        ("Axiom 6(6-2)", "res_extends"),
        ("Axiom 6(6-3)", "res_comp"),
        ("Axiom 6(6-4)", "res_inter"),
        ("Axiom 7", "local_closed"),
        ("Axiom 8", "gluing"),
    ],
    "5.28": [
        ("Axiom 1", "individuals"),
        ("Axiom 2", "domain"),
        ("Axiom 3(3-1)", "der_extends"),
        ("Axiom 3(3-2)", "der_iso"),
        ("Axiom 4", "kernel_bicond"),
        ("Axiom 5(5-1)", "res_extends"),
        ("Axiom 5(5-2)", "res_comp"),
        ("Axiom 5(5-3)", "res_inter"),
        ("Axiom 6", "local_closed"),
        ("Axiom 7", "gluing"),
        ("derived addition", "derived_addition_local"),
    ],
}


def axiom_ids(system: str) -> list:
    return [f"{system}/{name}" for name, _ in _AXIOMS[system]]


def check_system(c: CandidateStructure, system: str, samples: int = 50, seed: int = 0) -> VerdictReport:
    """Run every axiom of ``system`` on ``c``."""
    if system not in _AXIOMS:
        raise UsageError(f"unknown axiom system {system!r}")
    if system in ("2.20", "2.25") and len(c.regions) != 1:
        raise UsageError(f"system {system} needs a single-region candidate, got {len(c.regions)} regions")
    chk = _Checker(c, system, samples, seed)
    for name, method in _AXIOMS[system]:
        getattr(chk, method)(name)
    return VerdictReport(system, seed, samples, tuple(chk.verdicts))


def check_full(c: CandidateStructure, system: str, samples: int = 50, seed: int = 0) -> VerdictReport:
    if system not in FULL:
        raise UsageError(f"{system} is not a full system; use one of {', '.join(FULL)}")
    return check_system(c, system, samples, seed)


def check_simplified(c: CandidateStructure, system: str, samples: int = 50, seed: int = 0) -> VerdictReport:
    if system not in SIMPLIFIED:
        raise UsageError(f"{system} is not a simplified system; use one of {', '.join(SIMPLIFIED)}")
    return check_system(c, system, samples, seed)
