"""Indexers, bondings, restriction families and S-spaces over finite region systems.

An S-space attaches an S-group to every region of a finite ∩-closed system
``Γ(I)``, relabels homomorphisms between regions through a bonding, and maps
elements to subregions through a restriction family. Coherent S-spaces glue
families that agree on overlaps.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Optional

from sgroups.algebra import AuditReport, Auditor, SGroup, UsageError, _domain_element, audit_sgroup
from sgroups.models.pp import ModelDescriptor, glue_pp, make_pp_sgroup, pp_restrict
from sgroups.models.trivial import make_zero_sgroup
from sgroups.regions import (
    EMPTY,
    FinSet,
    Interval,
    intersect,
    is_subset,
    region_from_json,
    region_key,
    region_to_json,
    union_equals,
)

__all__ = [
    "Indexer",
    "Bonding",
    "RestrictionFamily",
    "SSpace",
    "Cover",
    "IsoWitness",
    "Incoherent",
    "UnsupportedError",
    "indexer_validate",
    "sspace_validate",
    "coherent_check",
    "first_incoherence",
    "glue",
    "generated_sspace",
    "subspace",
    "iso_check",
    "make_pp_sspace",
    "five_region_sspace",
    "sspace_from_json",
    "sspace_to_json",
]

POINT = FinSet(("I",))


class Incoherent(ValueError):
    """A family disagrees on the overlap ``pair``."""

    def __init__(self, message, pair):
        super().__init__(message)
        self.pair = pair


class UnsupportedError(NotImplementedError):
    """The operation needs a property the structure does not claim."""


@dataclass(frozen=True, eq=False)
class Indexer:
    """A finite region system ``Γ(I)`` with an S-group on each region."""

    ground: Any
    regions: tuple
    groups: dict

    @classmethod
    def build(cls, ground, groups: dict) -> "Indexer":
        return cls(ground, tuple(sorted(groups, key=region_key)), dict(groups))

    def group(self, region) -> SGroup:
        try:
            return self.groups[region]
        except KeyError:
            raise UsageError(f"{region} is not a region of this indexer") from None

    def gamma(self, region) -> list:
        """``Γ(γ)``: the regions contained in ``γ``."""
        return [r for r in self.regions if is_subset(r, region)]

    def delta(self) -> list:
        """``Δ(I)``: pairs ``(γ′, γ)`` with ``γ′ ⊆ γ``."""
        return [(a, b) for b in self.regions for a in self.regions if is_subset(a, b)]

    def pairs(self) -> list:
        return [(a, b) for a in self.regions for b in self.regions]

    def covers(self, region) -> list:
        """All covers of ``region`` by nonempty regions of ``Γ(γ)``, singleton first."""
        if region is EMPTY:
            return [Cover(EMPTY, ())]
        cands = [r for r in self.gamma(region) if r is not EMPTY]
        out = []
        for k in range(1, len(cands) + 1):
            for parts in itertools.combinations(cands, k):
                if union_equals(parts, region):
                    out.append(Cover(region, parts))
        out.sort(key=lambda c: (len(c.parts), [region_key(p) for p in c.parts]))
        return out


@dataclass(frozen=True)
class Cover:
    """A finite family of subregions whose union is exactly ``region``."""

    region: Any
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if EMPTY in self.parts:
            raise ValueError("covers list nonempty regions only")
        if not union_equals(self.parts, self.region):
            shown = ", ".join(str(p) for p in self.parts)
            raise ValueError(f"{{{shown}}} does not cover {self.region}")

    def containing(self, point):
        for p in self.parts:
            if p.contains(point):
                return p
        return None

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.parts) + "}"


def _identity_bond(target, source, label):
    return label


def _identity_restrict(target, source, g):
    return g


@dataclass(frozen=True, eq=False)
class Bonding:
    """Label maps ``i_{(γ′,γ)}: H(γ) → H(γ′)``, called as ``map(γ′, γ, Φ)``."""

    map: Callable = _identity_bond


@dataclass(frozen=True, eq=False)
class RestrictionFamily:
    """Maps ``Θ_{(γ′,γ)}: G(γ) → G(γ′)``, called as ``apply(γ′, γ, g)``."""

    apply: Callable = _identity_restrict


@dataclass(frozen=True, eq=False)
class SSpace:
    """``𝒢(I) = (𝔾(Γ(I)), i(Γ²(I)), Θ(Δ(I)))`` with claimed flags.

    ``gluer(space, cover, family)`` builds the glued element when the space
    claims to be coherent; without one, only covers listing the region itself
    can be glued.
    """

    name: str
    indexer: Indexer
    bonding: Bonding = field(default_factory=Bonding)
    restriction: RestrictionFamily = field(default_factory=RestrictionFamily)
    abelian: bool = True
    surjective: bool = True
    with_identity: bool = True
    coherent: bool = False
    gluer: Optional[Callable] = None
    hooks: dict = field(default_factory=dict)

    @property
    def regions(self):
        return self.indexer.regions

    @property
    def ground(self):
        return self.indexer.ground

    def group(self, region) -> SGroup:
        return self.indexer.group(region)

    def restrict(self, target, source, g):
        if not is_subset(target, source):
            raise UsageError(f"{target} is not inside {source}")
        return self.restriction.apply(target, source, g)

    def bond(self, target, source, label):
        return self.bonding.map(target, source, label)

    def covers(self, region):
        return self.indexer.covers(region)

    def sample(self, region, rng: random.Random):
        return self.group(region).group.sample(rng)

    def eq(self, region, a, b) -> bool:
        return self.group(region).group.eq(a, b)

    def render(self, region, g) -> str:
        return self.group(region).group.render(g)

    def labels(self, region, cap: int = 4):
        s = self.group(region)
        enum = s.hooks.get("labels")
        if enum is not None:
            return list(enum(cap))
        rng = random.Random(0)
        seen = []
        for _ in range(4 * cap):
            lab = s.monoid.sample(rng)
            if lab not in seen:
                seen.append(lab)
        return seen

    def __repr__(self):
        return f"SSpace({self.name})"


# checks


def indexer_validate(x: Indexer) -> AuditReport:
    """Ground region present, closure under intersection, disjoint region tags."""
    a = Auditor("indexer", 0, str)
    a.record("contains the ground region", x.ground in x.regions, 1,
             None if x.ground in x.regions else str(x.ground))
    a.record("regions lie in the ground region", all(is_subset(r, x.ground) for r in x.regions),
             len(x.regions))
    bad = None
    n = 0
    for r1, r2 in itertools.combinations(x.regions, 2):
        n += 1
        if intersect(r1, r2) not in x.regions:
            bad = f"({r1}, {r2})"
            break
    a.record("closed under intersection", bad is None, n, bad)
    keys = [x.groups[r].key for r in x.regions]
    dup = len(set(keys)) != len(keys)
    a.record("region groups pairwise distinct", not dup, len(keys),
             ", ".join(keys) if dup else None)
    return a.report()


def first_incoherence(s: SSpace, cover: Cover, fam):
    """First pair of cover regions whose elements disagree on the overlap, else ``None``."""
    fam = list(fam)
    if len(fam) != len(cover.parts):
        raise UsageError(f"family has {len(fam)} members for a cover of {len(cover.parts)} regions")
    for (i, p), (j, q) in itertools.combinations(enumerate(cover.parts), 2):
        ov = intersect(p, q)
        if ov is EMPTY:
            continue
        if not s.eq(ov, s.restrict(ov, p, fam[i]), s.restrict(ov, q, fam[j])):
            return (p, q)
    return None


def coherent_check(s: SSpace, cover: Cover, fam) -> bool:
    """True iff the family agrees on every nonempty pairwise overlap."""
    return first_incoherence(s, cover, fam) is None


def _generic_glue(s: SSpace, cover: Cover, fam):
    if cover.region is EMPTY:
        return s.group(EMPTY).group.zero
    if cover.region in cover.parts:
        return fam[cover.parts.index(cover.region)]
    raise UnsupportedError(f"{s.name} has no gluing procedure for {cover}")


def glue(s: SSpace, cover: Cover, fam, verify: bool = True):
    """The unique element of ``G(γ)`` restricting to each member of a coherent family.

    Raises
    ------
    UnsupportedError
        If the space does not claim to be coherent.
    Incoherent
        With the violating pair of cover regions.
    """
    if not s.coherent:
        raise UnsupportedError(f"{s.name} is not a coherent S-space")
    fam = list(fam)
    bad = first_incoherence(s, cover, fam)
    if bad is not None:
        raise Incoherent(f"family disagrees on {bad[0]} ∩ {bad[1]}", bad)
    g = (s.gluer or _generic_glue)(s, cover, fam)
    if verify:
        for p, f in zip(cover.parts, fam):
            if not s.eq(p, s.restrict(p, cover.region, g), f):
                raise RuntimeError(f"glued element does not restrict to the patch on {p}")
    return g


def _restriction_sample(s: SSpace, r: random.Random):
    pairs = s.indexer.delta()
    return r.choice(pairs)


def sspace_validate(s: SSpace, samples: int = 50, seed: int = 0, label_cap: int = 4,
                    audit_groups: bool = True) -> AuditReport:
    """Indexer laws, per-region S-group audits, bonding and restriction laws, and gluing.

    The glue-domain law (a patchwise domain member is a global domain member)
    is tested on sampled elements for every given cover where the premise
    happens to hold; the report records how many premises held.
    """
    x = s.indexer
    a = Auditor(f"S-space {s.name}", seed, str)
    for c in indexer_validate(x).checks:
        a.checks.append(c)
    if audit_groups:
        for i, reg in enumerate(x.regions):
            rep = audit_sgroup(s.group(reg), samples, seed + i)
            bad = rep.failures()
            a.record(f"S-group on {reg}", rep.passed, samples,
                     f"{bad[0].name}: {bad[0].counterexample}" if bad else None)

    # bonding laws, enumerated over labels up to the cap
    def bond_laws():
        for (p, q) in x.pairs():
            labs = s.labels(q, label_cap)
            hs, ht = s.group(q), s.group(p)
            if s.bond(p, q, hs.identity) != ht.identity:
                return f"identity not preserved on ({p},{q})"
            images = []
            for la in labs:
                im = s.bond(p, q, la)
                if s.bond(q, p, im) != la:
                    return f"i({q},{p}) i({p},{q}) ≠ id at {la}"
                images.append(im)
                for lb in labs:
                    if s.bond(p, q, hs.compose(la, lb)) != ht.compose(im, s.bond(p, q, lb)):
                        return f"not a homomorphism on ({p},{q}) at {la}, {lb}"
            if len(set(images)) != len(images):
                return f"not injective on ({p},{q})"
        for r1, r2, r3 in itertools.product(x.regions, repeat=3):
            for la in s.labels(r3, label_cap):
                if s.bond(r1, r2, s.bond(r2, r3, la)) != s.bond(r1, r3, la):
                    return f"composition fails on ({r1},{r2},{r3}) at {la}"
        return None

    bad = bond_laws()
    a.record("bonding: isomorphisms, inverse and composition laws", bad is None, len(x.pairs()), bad)

    def draw_hom(r):
        p, q = _restriction_sample(s, r)
        return p, q, s.sample(q, r), s.sample(q, r)

    a.check("restriction: homomorphism", samples, draw_hom,
            lambda p, q, g, h: s.eq(p, s.restrict(p, q, s.group(q).group.add(g, h)),
                                    s.group(p).group.add(s.restrict(p, q, g), s.restrict(p, q, h))))

    chains = [(c, b, a_) for (c, b) in x.delta() for (b2, a_) in x.delta() if b2 == b]

    def draw_chain(r):
        c, b, top = r.choice(chains)
        return c, b, top, s.sample(top, r)

    a.check("restriction: composition", samples, draw_chain,
            lambda c, b, top, g: s.eq(c, s.restrict(c, b, s.restrict(b, top, g)), s.restrict(c, top, g)))

    def draw_inter(r):
        p, q = _restriction_sample(s, r)
        lab = s.group(q).monoid.sample(r)
        return p, q, lab, _domain_element(s.group(q), lab, r)

    def test_inter(p, q, lab, g):
        src, dst = s.group(q), s.group(p)
        o = dst.oracle(s.bond(p, q, lab))
        rg = s.restrict(p, q, g)
        return o.in_domain(rg) and s.eq(p, s.restrict(p, q, src.oracle(lab).apply(g)), o.apply(rg))

    a.check("restriction: intertwining with the bonding", samples, draw_inter, test_inter)

    covers = {reg: s.covers(reg) for reg in x.regions}
    held = [0]

    def draw_glue_domain(r):
        reg = r.choice(x.regions)
        lab = s.group(reg).monoid.sample(r)
        g = _domain_element(s.group(reg), lab, r) if r.random() < 0.5 else s.sample(reg, r)
        return reg, r.choice(covers[reg]), lab, g

    def test_glue_domain(reg, cov, lab, g):
        premise = all(s.group(p).oracle(s.bond(p, reg, lab)).in_domain(s.restrict(p, reg, g))
                      for p in cov.parts)
        if not premise:
            return True
        held[0] += 1
        return s.group(reg).oracle(lab).in_domain(g)

    a.check("restriction: patchwise domain membership is global", samples, draw_glue_domain, test_glue_domain)
    a.stats["glue-domain premises held"] = held[0]

    if s.coherent:
        def draw_fam(r):
            reg = r.choice(x.regions)
            return reg, r.choice(covers[reg]), s.sample(reg, r)

        def test_roundtrip(reg, cov, g):
            fam = [s.restrict(p, reg, g) for p in cov.parts]
            return s.eq(reg, glue(s, cov, fam), g)

        a.check("coherent: glue of restrictions round-trips", samples, draw_fam, test_roundtrip)

        def draw_pair(r):
            reg, cov, g = draw_fam(r)
            return reg, cov, g, s.sample(reg, r)

        def test_unique(reg, cov, g, h):
            same = all(s.eq(p, s.restrict(p, reg, g), s.restrict(p, reg, h)) for p in cov.parts)
            return s.eq(reg, g, h) if same else not s.eq(reg, g, h)

        a.check("coherent: elements agreeing on a cover are equal", samples, draw_pair, test_unique)
    return a.report()


# constructions


def generated_sspace(s: SGroup, ground=None) -> SSpace:
    """The S-space with the single region ``I``, identity bonding and identity restriction."""
    ground = ground if ground is not None else s.hooks.get("domain", POINT)
    return SSpace(
        name=f"generated({s.key})",
        indexer=Indexer.build(ground, {ground: s}),
        abelian=s.abelian,
        surjective=s.surjective,
        with_identity=s.with_identity,
        coherent=True,
        hooks={"generated": True, "model": s.model},
    )


def subspace(s: SSpace, region) -> SSpace:
    """``𝒢(γ)``: the regions inside ``γ`` with all maps inherited."""
    if region not in s.regions:
        raise UsageError(f"{region} is not a region of {s.name}")
    groups = {r: s.group(r) for r in s.indexer.gamma(region)}
    if region == s.ground:
        return s
    return replace(s, name=f"{s.name}|{region}", indexer=Indexer.build(region, groups))


def _pp_restrict(target, source, f):
    if target == source:
        return f
    if target is EMPTY:
        return 0
    return pp_restrict(f, target)


def _pp_gluer(s, cover, fam):
    if cover.region is EMPTY:
        return 0
    return glue_pp(cover.region, cover.parts, fam)


def make_pp_sspace(regions, caps: Optional[ModelDescriptor] = None, name: str = "pp") -> SSpace:
    """Piecewise polynomial S-space on a list of intervals (and optionally ``∅``).

    The ground region is the largest interval; restriction is restriction of
    functions and the bonding keeps the order ``n`` of ``dⁿ``.
    """
    ivs = [r for r in regions if r is not EMPTY]
    if not ivs:
        raise UsageError("need at least one interval")
    ground = max(ivs, key=lambda r: r.right - r.left)
    groups = {}
    for r in ivs:
        c = replace(caps, domain=r) if caps is not None else ModelDescriptor("pp", r)
        groups[r] = make_pp_sgroup(r, c)
    if EMPTY in regions:
        groups[EMPTY] = make_zero_sgroup(groups[ground].monoid, "pp∅")
    return SSpace(
        name=name,
        indexer=Indexer.build(ground, groups),
        restriction=RestrictionFamily(_pp_restrict),
        coherent=True,
        gluer=_pp_gluer,
        hooks={"model": "pp", "caps": caps},
    )


FIVE_REGIONS = (Interval(0, 3), Interval(0, 2), Interval(1, 3), Interval(1, 2), EMPTY)


def five_region_sspace(caps: Optional[ModelDescriptor] = None) -> SSpace:
    """The S-space on ``{(0,3), (0,2), (1,3), (1,2), ∅}``."""
    return make_pp_sspace(FIVE_REGIONS, caps, name="pp5")


# isomorphism witnesses


@dataclass(frozen=True, eq=False)
class IsoWitness:
    """Group maps ``alpha(γ, g)``, label maps ``beta(γ, Φ)`` and optional inverses for surjectivity."""

    alpha: Callable
    beta: Callable
    alpha_inv: Optional[Callable] = None


def iso_check(a: SSpace, b: SSpace, w: IsoWitness, samples: int = 100, seed: int = 0) -> AuditReport:
    """Sampled check that ``w`` is an isomorphism of S-spaces from ``a`` to ``b``."""
    if list(map(region_key, a.regions)) != list(map(region_key, b.regions)):
        raise UsageError("isomorphism needs the same region system on both sides")
    aud = Auditor(f"isomorphism {a.name} -> {b.name}", seed, str)
    regs = a.regions

    def draw_g(r):
        reg = r.choice(regs)
        return reg, a.sample(reg, r), a.sample(reg, r)

    aud.check("alpha is a homomorphism", samples, draw_g,
              lambda reg, g, h: b.eq(reg, w.alpha(reg, a.group(reg).group.add(g, h)),
                                     b.group(reg).group.add(w.alpha(reg, g), w.alpha(reg, h))))
    aud.check("alpha is injective", samples, draw_g,
              lambda reg, g, h: a.eq(reg, g, h) == b.eq(reg, w.alpha(reg, g), w.alpha(reg, h)))

    def draw_lab(r):
        reg = r.choice(regs)
        m = a.group(reg).monoid
        return reg, m.sample(r), m.sample(r)

    aud.check("beta is a semigroup homomorphism", samples, draw_lab,
              lambda reg, p, q: w.beta(reg, a.group(reg).compose(p, q))
              == b.group(reg).compose(w.beta(reg, p), w.beta(reg, q)))

    def draw_dom(r):
        reg = r.choice(regs)
        lab = a.group(reg).monoid.sample(r)
        return reg, lab, _domain_element(a.group(reg), lab, r)

    def test_dom(reg, lab, g):
        o = b.group(reg).oracle(w.beta(reg, lab))
        ag = w.alpha(reg, g)
        return o.in_domain(ag) and b.eq(reg, w.alpha(reg, a.group(reg).oracle(lab).apply(g)), o.apply(ag))

    aud.check("(a) alpha(Φ(g)) = beta(Φ)(alpha(g))", samples, draw_dom, test_dom)

    delta = a.indexer.delta()

    def draw_res(r):
        p, q = r.choice(delta)
        return p, q, a.sample(q, r)

    aud.check("(b) alpha commutes with restriction", samples, draw_res,
              lambda p, q, g: b.eq(p, w.alpha(p, a.restrict(p, q, g)), b.restrict(p, q, w.alpha(q, g))))

    pairs = a.indexer.pairs()

    def draw_bond(r):
        p, q = r.choice(pairs)
        return p, q, a.group(q).monoid.sample(r)

    aud.check("(c) beta commutes with bonding", samples, draw_bond,
              lambda p, q, lab: w.beta(p, a.bond(p, q, lab)) == b.bond(p, q, w.beta(q, lab)))
    if w.alpha_inv is not None:
        def draw_t(r):
            reg = r.choice(regs)
            return reg, b.sample(reg, r)

        aud.check("alpha is surjective", samples, draw_t,
                  lambda reg, t: b.eq(reg, w.alpha(reg, w.alpha_inv(reg, t)), t))
    return aud.report()


# descriptors


def sspace_from_json(obj) -> SSpace:
    """Build an S-space from ``{"model", "domain"|"regions", "caps"}``.

    ``int`` and ``trivial`` give generated spaces; ``pp`` with ``domain``
    gives the generated space of one interval, with ``regions`` a
    multi-region space.
    """
    from sgroups.models.integer import make_int_sgroup
    from sgroups.models.trivial import make_trivial_sgroup
    from sgroups.regions import parse_interval

    if not isinstance(obj, dict) or "model" not in obj:
        raise ValueError("space descriptor needs a 'model' key")
    model = obj["model"]
    caps = dict(obj.get("caps", {}))
    if model == "int":
        return generated_sspace(make_int_sgroup(caps.get("bound", 24), caps.get("max_label", 12)))
    if model == "trivial":
        return generated_sspace(make_trivial_sgroup(int(obj.get("modulus", 5))))
    if model != "pp":
        raise ValueError(f"unknown model {model!r}")
    known = {k: caps[k] for k in ("max_den", "max_degree", "max_breaks", "max_order", "bound") if k in caps}
    if "regions" in obj:
        regs = [region_from_json(r) for r in obj["regions"]]
        ivs = [r for r in regs if r is not EMPTY]
        if not ivs or not all(isinstance(r, Interval) for r in ivs):
            raise ValueError("pp regions must be intervals")
        ground = max(ivs, key=lambda r: r.right - r.left)
        return make_pp_sspace(regs, ModelDescriptor("pp", ground, **known))
    dom = obj.get("domain", "(-1,1)")
    J = parse_interval(dom) if isinstance(dom, str) else region_from_json(dom)
    if not isinstance(J, Interval):
        raise ValueError("pp domain must be an interval")
    return generated_sspace(make_pp_sgroup(J, ModelDescriptor("pp", J, **known)))


def sspace_to_json(s: SSpace) -> dict:
    model = s.hooks.get("model", "generic")
    out = {"model": model, "name": s.name, "regions": [region_to_json(r) for r in s.regions],
           "flags": {"abelian": s.abelian, "surjective": s.surjective,
                     "with_identity": s.with_identity, "coherent": s.coherent}}
    return out
