"""The two extensions of an S-space.

The first extension applies the S-group extension region by region and lifts
bonding and restriction to it (:func:`build_tilde`). The second takes
coherent families of first-extension elements over covers, modulo agreement
on all cross overlaps, and is coherent and locally closed by construction
(:class:`BarSpace`).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from sgroups.algebra import AuditReport, Auditor, UsageError
from sgroups.extension import (
    ExtElement,
    ExtSGroup,
    LiftSpec,
    RegionMismatch,
    lift_hom,
    prolong_apply,
)
from sgroups.models.pp import glue_tilde_pp
from sgroups.regions import EMPTY, intersect, is_subset, region_from_json, region_key, region_to_json
from sgroups.spaces import Cover, Incoherent, Indexer, RestrictionFamily, SSpace, UnsupportedError

__all__ = [
    "TildeSpace",
    "build_tilde",
    "verify_1tess",
    "CoherentFamily",
    "BarElement",
    "BarSpace",
    "approx_sim",
    "bar_add",
    "b_embed",
    "bar_prolong",
    "bar_restrict",
    "bar_glue",
    "verify_2tess",
]


# first extension


@dataclass(frozen=True, eq=False)
class TildeSpace:
    """``𝒢̃(I)``: per-region extensions, the same bonding on labels, lifted restrictions.

    ``space`` presents the result as an :class:`SSpace` whose region groups
    are the extensions themselves.
    """

    base: SSpace
    ext: dict
    lifts: dict
    space: SSpace

    @property
    def regions(self):
        return self.base.regions

    def restrict(self, target, source, a: ExtElement) -> ExtElement:
        if target == source:
            return a
        return self.lifts[(target, source)](a)

    def bond(self, target, source, label):
        return self.base.bond(target, source, label)

    def embed(self, region, g) -> ExtElement:
        return self.ext[region].embed(g)

    def sample(self, region, rng: random.Random) -> ExtElement:
        e = self.ext[region]
        x = e.sample(rng)
        return e.respell(x, rng) if rng.random() < 0.3 else x


def _tilde_gluer(base: SSpace):
    if base.hooks.get("generated"):
        return None
    if base.hooks.get("model") == "pp":
        def gluer(space, cover, fam):
            region = cover.region
            e = space.group(region).hooks["ext"]
            if region is EMPTY:
                return e.zero
            n, f = glue_tilde_pp(region, cover.parts, [(a.hom, a.elem) for a in fam])
            return e.pair(n, f)

        return gluer
    return False


def build_tilde(s: SSpace, samples: int = 30, seed: int = 0) -> TildeSpace:
    """First extension of ``s``.

    Restrictions are lifted by ``[Φ, g] ↦ [i(Φ), Θ(g)]`` after sampling the
    lift hypotheses on every pair ``(γ′, γ)``.

    Raises
    ------
    ExtensionRefused
        If ``s`` does not claim the abelian, surjective and with-identity
        flags, or a lift hypothesis fails.
    """
    from sgroups.extension import ExtensionRefused

    if not (s.abelian and s.surjective and s.with_identity):
        raise ExtensionRefused(f"{s.name} is not abelian, surjective and with identity")
    ext = {r: ExtSGroup(s.group(r), region=r) for r in s.regions}
    lifts = {}
    for i, (p, q) in enumerate(s.indexer.delta()):
        if p == q:
            continue
        spec = LiftSpec(
            ext[q], ext[p],
            label_map=lambda lab, p=p, q=q: s.bond(p, q, lab),
            h=lambda g, p=p, q=q: s.restrict(p, q, g),
        )
        lifts[(p, q)] = lift_hom(spec, samples, seed + i)

    def apply(target, source, a):
        return a if target == source else lifts[(target, source)](a)

    gluer = _tilde_gluer(s)
    groups = {r: ext[r].as_sgroup() for r in s.regions}
    space = SSpace(
        name=f"tilde({s.name})",
        indexer=Indexer.build(s.ground, groups),
        bonding=s.bonding,
        restriction=RestrictionFamily(apply),
        coherent=gluer is not False,
        gluer=gluer or None,
        hooks={"tilde": True, "model": s.hooks.get("model"), "generated": s.hooks.get("generated", False)},
    )
    return TildeSpace(s, ext, lifts, space)


def verify_1tess(t: TildeSpace, samples: int = 50, seed: int = 0) -> AuditReport:
    """Restriction laws of the first extension, its agreement with ``Θ`` and with prolongations."""
    from sgroups.spaces import sspace_validate

    base = sspace_validate(t.space, samples, seed, audit_groups=False)
    a = Auditor(f"first extension of {t.base.name}", seed, str)
    a.checks.extend(base.checks)
    a.stats.update(base.stats)
    b = t.base
    delta = b.indexer.delta()
    proper = [pq for pq in delta if pq[0] != pq[1] and pq[0] is not EMPTY] or delta

    def pair(r):
        return r.choice(proper) if r.random() < 0.5 else r.choice(delta)

    def draw_ext(r):
        p, q = pair(r)
        return p, q, b.sample(q, r)

    a.check("lifted restriction extends Θ on embedded elements", samples, draw_ext,
            lambda p, q, g: t.restrict(p, q, t.embed(q, g)) == t.embed(p, b.restrict(p, q, g)))

    def draw_pro(r):
        p, q = pair(r)
        return p, q, b.group(q).monoid.sample(r), t.sample(q, r)

    a.check("lifted restriction intertwines with prolongations", samples, draw_pro,
            lambda p, q, lab, x: t.restrict(p, q, prolong_apply(lab, x))
            == prolong_apply(b.bond(p, q, lab), t.restrict(p, q, x)))
    return a.report()


# second extension


@dataclass(frozen=True, eq=False)
class CoherentFamily:
    """First-extension elements over a cover agreeing on every overlap."""

    region: object
    cover: Cover
    patches: tuple

    def __post_init__(self):
        object.__setattr__(self, "patches", tuple(self.patches))
        if len(self.patches) != len(self.cover.parts):
            raise UsageError("one patch per cover region is needed")

    def items(self):
        return zip(self.cover.parts, self.patches)

    def patch(self, region):
        return self.patches[self.cover.parts.index(region)]


class BarElement:
    """A class of coherent families; equality is :func:`approx_sim`."""

    __slots__ = ("space", "family")
    __hash__ = None

    def __init__(self, space: "BarSpace", family: CoherentFamily):
        self.space = space
        self.family = family

    @property
    def region(self):
        return self.family.region

    def _peer(self, other):
        if not isinstance(other, BarElement):
            raise RegionMismatch(f"cannot combine a bar element with {type(other).__name__}")
        if other.space is not self.space or other.region != self.region:
            raise RegionMismatch(f"bar elements over {self.region} and {other.region} are never comparable")
        return other

    def __eq__(self, other):
        if not isinstance(other, BarElement):
            return NotImplemented
        return approx_sim(self.family, self._peer(other).family, self.space.tilde)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __add__(self, other):
        return bar_add(self, self._peer(other))

    def __neg__(self):
        return self.space.neg(self)

    def __sub__(self, other):
        return bar_add(self, -self._peer(other))

    def __str__(self):
        return self.space.render(self)

    def __repr__(self):
        return f"BarElement({self.space.render(self)})"


def _first_disagreement(a: CoherentFamily, b: CoherentFamily, t: TildeSpace):
    for (xi, x), (eta, y) in itertools.product(a.items(), b.items()):
        z = intersect(xi, eta)
        if z is EMPTY:
            continue
        if t.restrict(z, xi, x) != t.restrict(z, eta, y):
            return xi, eta
    return None


def family_incoherence(f: CoherentFamily, t: TildeSpace):
    for (i, (xi, x)), (j, (eta, y)) in itertools.combinations(enumerate(f.items()), 2):
        z = intersect(xi, eta)
        if z is not EMPTY and t.restrict(z, xi, x) != t.restrict(z, eta, y):
            return xi, eta
    return None


def approx_sim(a: CoherentFamily, b: CoherentFamily, t: TildeSpace) -> bool:
    """``≈``: every nonempty cross overlap ``ξ ∩ η`` sees equal restrictions."""
    if a.region != b.region:
        raise RegionMismatch(f"families over {a.region} and {b.region}")
    return _first_disagreement(a, b, t) is None


def _dedupe(region, parts, patches):
    seen, ps, xs = set(), [], []
    for p, x in zip(parts, patches):
        if p in seen:
            continue
        seen.add(p)
        ps.append(p)
        xs.append(x)
    order = sorted(range(len(ps)), key=lambda i: region_key(ps[i]))
    return CoherentFamily(region, Cover(region, [ps[i] for i in order]), [xs[i] for i in order])


def bar_add(a: BarElement, b: BarElement) -> BarElement:
    """Patchwise sum over the intersection cover ``{ξ ∩ η ≠ ∅}``."""
    bs, t = a.space, a.space.tilde
    parts, patches = [], []
    for (xi, x), (eta, y) in itertools.product(a.family.items(), b.family.items()):
        z = intersect(xi, eta)
        if z is EMPTY:
            continue
        parts.append(z)
        patches.append(t.restrict(z, xi, x) + t.restrict(z, eta, y))
    return BarElement(bs, _dedupe(a.region, parts, patches))


def b_embed(bs: "BarSpace", region, g: ExtElement, cover: Optional[Cover] = None) -> BarElement:
    """``b_γ(g̃)``: the family of restrictions of ``g̃`` over a cover (default ``{γ}``)."""
    cover = cover or bs.default_cover(region)
    if cover.region != region:
        raise UsageError(f"{cover} is not a cover of {region}")
    if g.owner.key != bs.tilde.ext[region].key:
        raise RegionMismatch(f"{g.owner.name} is not the extension over {region}")
    t = bs.tilde
    return BarElement(bs, CoherentFamily(region, cover, [t.restrict(p, region, g) for p in cover.parts]))


def bar_prolong(label, a: BarElement) -> BarElement:
    """``Φ̄``: apply the prolongation of the transported label on each patch."""
    bs, t = a.space, a.space.tilde
    if not t.base.group(a.region).monoid.contains(label):
        raise UsageError(f"{label!r} is not a label over {a.region}")
    patches = [prolong_apply(t.bond(xi, a.region, label), x) for xi, x in a.family.items()]
    return BarElement(bs, CoherentFamily(a.region, a.family.cover, patches))


def bar_restrict(a: BarElement, target) -> BarElement:
    """``Θ̄``: restrict each patch to ``ξ ∩ γ′`` over the induced cover of ``γ′``."""
    bs, t = a.space, a.space.tilde
    if not is_subset(target, a.region) or target not in t.regions:
        raise UsageError(f"{target} is not a region inside {a.region}")
    parts, patches = [], []
    for xi, x in a.family.items():
        z = intersect(xi, target)
        if z is EMPTY:
            continue
        parts.append(z)
        patches.append(t.restrict(z, xi, x))
    return BarElement(bs, _dedupe(target, parts, patches))


def bar_glue(bs: "BarSpace", cover: Cover, elems) -> BarElement:
    """Glue bar elements on a cover whose restrictions agree on overlaps.

    The result is the union of the representatives' families.

    Raises
    ------
    Incoherent
        With the first pair of cover regions whose restrictions differ.
    """
    elems = list(elems)
    if len(elems) != len(cover.parts):
        raise UsageError("one bar element per cover region is needed")
    for p, e in zip(cover.parts, elems):
        if e.region != p:
            raise RegionMismatch(f"element over {e.region} given for {p}")
    for (i, p), (j, q) in itertools.combinations(enumerate(cover.parts), 2):
        z = intersect(p, q)
        if z is EMPTY:
            continue
        if bar_restrict(elems[i], z) != bar_restrict(elems[j], z):
            raise Incoherent(f"bar elements disagree on {p} ∩ {q}", (p, q))
    parts, patches = [], []
    for e in elems:
        for xi, x in e.family.items():
            parts.append(xi)
            patches.append(x)
    if cover.region is EMPTY:
        return bs.zero(EMPTY)
    return BarElement(bs, _dedupe(cover.region, parts, patches))


@dataclass(eq=False)
class BarSpace:
    """``𝒢̄(I)`` built on a first extension."""

    tilde: TildeSpace
    _zero: dict = field(default_factory=dict, repr=False)

    @property
    def regions(self):
        return self.tilde.regions

    def default_cover(self, region) -> Cover:
        return Cover(region, () if region is EMPTY else (region,))

    def family(self, region, parts, patches, check: bool = True) -> BarElement:
        fam = CoherentFamily(region, Cover(region, parts), patches)
        if check:
            bad = family_incoherence(fam, self.tilde)
            if bad is not None:
                raise Incoherent(f"family disagrees on {bad[0]} ∩ {bad[1]}", bad)
        return BarElement(self, fam)

    def zero(self, region) -> BarElement:
        return b_embed(self, region, self.tilde.ext[region].zero)

    def embed(self, region, g: ExtElement, cover: Optional[Cover] = None) -> BarElement:
        return b_embed(self, region, g, cover)

    def embed_base(self, region, g, cover: Optional[Cover] = None) -> BarElement:
        return b_embed(self, region, self.tilde.embed(region, g), cover)

    def add(self, a, b):
        return bar_add(a, b)

    def neg(self, a: BarElement) -> BarElement:
        return BarElement(self, CoherentFamily(a.region, a.family.cover, [-x for x in a.family.patches]))

    def prolong(self, label, a):
        return bar_prolong(label, a)

    def restrict(self, target, a):
        return bar_restrict(a, target)

    def glue(self, cover, elems):
        return bar_glue(self, cover, elems)

    def sample(self, region, rng: random.Random) -> BarElement:
        """Restrictions of a sampled first-extension element over a random cover, respelled patchwise."""
        t = self.tilde
        g = t.sample(region, rng)
        cover = rng.choice(t.base.covers(region))
        patches = []
        for p in cover.parts:
            x = t.restrict(p, region, g)
            patches.append(t.ext[p].respell(x, rng) if rng.random() < 0.5 else x)
        return BarElement(self, CoherentFamily(region, cover, patches))

    def local_witness(self, a: BarElement, point):
        """A cover region ``ξ ∋ point`` with ``Θ̄_{(ξ,γ)}(a) = b_ξ(a_ξ)``, or ``None``."""
        for xi, x in a.family.items():
            if xi.contains(point) and bar_restrict(a, xi) == b_embed(self, xi, x):
                return xi, x
        return None

    def as_tilde(self, a: BarElement) -> Optional[ExtElement]:
        """A first-extension element ``g̃`` with ``b(g̃) = a`` if the first extension glues, else ``None``."""
        sp = self.tilde.space
        if a.region is EMPTY:
            return self.tilde.ext[EMPTY].zero
        if not sp.coherent:
            if a.region in a.family.cover.parts:
                return a.family.patch(a.region)
            return None
        from sgroups.spaces import glue

        try:
            g = glue(sp, a.family.cover, list(a.family.patches))
        except (Incoherent, UnsupportedError, ValueError):
            return None
        return g if b_embed(self, a.region, g) == a else None

    def render(self, a: BarElement) -> str:
        if a.region is EMPTY:
            return "{}"
        body = "; ".join(f"{xi}: {x}" for xi, x in a.family.items())
        return "{" + body + "}"

    def to_json(self, a: BarElement) -> dict:
        ext = self.tilde.ext
        return {
            "region": region_to_json(a.region),
            "cover": [region_to_json(p) for p in a.family.cover.parts],
            "patches": [ext[p].to_json(x) for p, x in a.family.items()],
        }

    def from_json(self, obj) -> BarElement:
        try:
            region = region_from_json(obj["region"])
            parts = [region_from_json(p) for p in obj["cover"]]
            raw = obj["patches"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed bar element: {exc}") from exc
        if region not in self.regions or any(p not in self.regions for p in parts):
            raise ValueError("bar element mentions regions outside the space")
        patches = [self.tilde.ext[p].from_json(x) for p, x in zip(parts, raw)]
        return self.family(region, parts, patches)


def build_bar(t: TildeSpace) -> BarSpace:
    return BarSpace(t)


# verification


def _points(region, rng):
    return region.sample_point(rng, 8)


def verify_2tess(bs: BarSpace, samples: int = 50, seed: int = 0, enumeration=None) -> AuditReport:
    """Equivalence, group, embedding, prolongation, restriction, gluing and local-closedness laws.

    ``enumeration`` optionally maps a region to an exhaustive list of
    first-extension elements; ``b`` is then checked to be a bijection onto
    the bar elements they and their respellings give.
    """
    t = bs.tilde
    a = Auditor(f"second extension {t.base.name}", seed, str)
    regs = list(bs.regions)
    nonempty = [r for r in regs if r is not EMPTY]

    def el(r):
        reg = r.choice(regs)
        return reg, bs.sample(reg, r)

    def el2(r):
        reg = r.choice(regs)
        return reg, bs.sample(reg, r), bs.sample(reg, r)

    def el3(r):
        reg = r.choice(regs)
        return reg, bs.sample(reg, r), bs.sample(reg, r), bs.sample(reg, r)

    def respelled(x: BarElement, r):
        """Same class, different representative: restrict a glue of it over another cover."""
        reg = x.region
        cover = r.choice(t.base.covers(reg))
        g = bs.as_tilde(x)
        if g is None:
            return x
        patches = [t.ext[p].respell(t.restrict(p, reg, g), r) for p in cover.parts]
        return BarElement(bs, CoherentFamily(reg, cover, patches))

    a.check("≈ reflexive and symmetric", samples, el2,
            lambda reg, x, y: x == x and (x == y) == (y == x))

    def draw_chain(r):
        reg, x = el(r)
        return reg, x, respelled(x, r), respelled(x, r)

    a.check("≈ transitive on constructed chains", samples, draw_chain,
            lambda reg, x, y, z: x == y and y == z and x == z)

    def draw_wd(r):
        reg, x, y = el2(r)
        return reg, x, y, respelled(x, r), respelled(y, r)

    a.check("addition independent of representatives", samples, draw_wd,
            lambda reg, x, y, x2, y2: x + y == x2 + y2)
    a.check("addition associative", samples, el3, lambda reg, x, y, z: (x + y) + z == x + (y + z))
    a.check("addition commutative", samples, el2, lambda reg, x, y: x + y == y + x)
    a.check("zero neutral and inverses", samples, el,
            lambda reg, x: x + bs.zero(reg) == x and x + (-x) == bs.zero(reg))

    def draw_b(r):
        reg = r.choice(regs)
        return reg, t.sample(reg, r), t.sample(reg, r), r.choice(t.base.covers(reg))

    a.check("b injective", samples, draw_b,
            lambda reg, g, h, c: (g == h) == (b_embed(bs, reg, g, c) == b_embed(bs, reg, h)))
    a.check("b homomorphism and independent of the cover", samples, draw_b,
            lambda reg, g, h, c: b_embed(bs, reg, g + h, c) == b_embed(bs, reg, g) + b_embed(bs, reg, h))

    def lab(reg, r):
        return t.base.group(reg).monoid.sample(r)

    def draw_pro(r):
        reg, x, y = el2(r)
        return reg, x, y, lab(reg, r), lab(reg, r)

    a.check("Φ̄ endomorphism", samples, draw_pro,
            lambda reg, x, y, p, q: bar_prolong(p, x + y) == bar_prolong(p, x) + bar_prolong(p, y))
    a.check("Φ̄Ψ̄ = (ΦΨ)‾", samples, draw_pro,
            lambda reg, x, y, p, q: bar_prolong(p, bar_prolong(q, x))
            == bar_prolong(t.base.group(reg).compose(p, q), x))

    def draw_pb(r):
        reg = r.choice(regs)
        return reg, t.sample(reg, r), lab(reg, r)

    a.check("Φ̄ extends Φ̃ through b", samples, draw_pb,
            lambda reg, g, p: bar_prolong(p, b_embed(bs, reg, g)) == b_embed(bs, reg, prolong_apply(p, g)))

    delta = t.base.indexer.delta()
    chains = [(c, b, top) for (c, b) in delta for (b2, top) in delta if b2 == b]

    def draw_res(r):
        p, q = r.choice(delta)
        return p, q, bs.sample(q, r), bs.sample(q, r), lab(q, r)

    a.check("Θ̄ homomorphism", samples, draw_res,
            lambda p, q, x, y, f: bar_restrict(x + y, p) == bar_restrict(x, p) + bar_restrict(y, p))
    a.check("Θ̄ intertwines with prolongation", samples, draw_res,
            lambda p, q, x, y, f: bar_restrict(bar_prolong(f, x), p)
            == bar_prolong(t.bond(p, q, f), bar_restrict(x, p)))

    def draw_comp(r):
        c, b, top = r.choice(chains)
        return c, b, top, bs.sample(top, r)

    a.check("Θ̄ composition", samples, draw_comp,
            lambda c, b, top, x: bar_restrict(bar_restrict(x, b), c) == bar_restrict(x, c))

    def draw_rb(r):
        p, q = r.choice(delta)
        return p, q, t.sample(q, r)

    a.check("Θ̄ extends Θ̃ through b", samples, draw_rb,
            lambda p, q, g: bar_restrict(b_embed(bs, q, g), p) == b_embed(bs, p, t.restrict(p, q, g)))

    def draw_glue(r):
        reg, x = el(r)
        return reg, x, r.choice(t.base.covers(reg)), bs.sample(reg, r)

    def test_glue(reg, x, cover, y):
        pieces = [bar_restrict(x, p) for p in cover.parts]
        glued = bar_glue(bs, cover, pieces)
        if glued != x:
            return False
        same = all(bar_restrict(y, p) == q for p, q in zip(cover.parts, pieces))
        return same == (x == y)

    a.check("coherent: glue round-trip and uniqueness", samples, draw_glue, test_glue)

    def draw_perturb(r):
        reg = r.choice(nonempty)
        x = bs.sample(reg, r)
        d = bs.sample(reg, r)
        return reg, x, d, r.choice(t.base.covers(reg))

    def test_perturb(reg, x, d, cover):
        if d == bs.zero(reg):
            return True
        y = x + d
        return any(bar_restrict(x, p) != bar_restrict(y, p) for p in cover.parts)

    a.check("coherent: perturbations are detected on every cover", samples, draw_perturb, test_perturb)

    def draw_local(r):
        reg = r.choice(nonempty)
        return reg, bs.sample(reg, r), _points(reg, r)

    a.check("locally closed: a patch around each point restricts into b", samples, draw_local,
            lambda reg, x, pt: bs.local_witness(x, pt) is not None)

    # measured, never asserted
    rng = random.Random(seed + 1)
    found = 0
    for _ in range(samples):
        reg = rng.choice(regs)
        if bs.as_tilde(bs.sample(reg, rng)) is not None:
            found += 1
    a.stats["b-preimage found"] = f"{found}/{samples}"

    if enumeration is not None:
        erng = random.Random(seed + 2)
        for reg, elems in enumeration.items():
            bars = [b_embed(bs, reg, g) for g in elems]
            inj = all(bars[i] != bars[j] for i, j in itertools.combinations(range(len(bars)), 2))
            a.record(f"b injective on the enumerated classes over {reg}", inj, len(bars))
            miss = None
            for g in elems:
                cover = erng.choice(t.base.covers(reg))
                fam = [t.ext[p].respell(t.restrict(p, reg, g), erng) for p in cover.parts]
                x = BarElement(bs, CoherentFamily(reg, cover, fam))
                if sum(1 for b in bars if x == b) != 1:
                    miss = str(x)
                    break
            a.record(f"every enumerated family is exactly one b-image over {reg}", miss is None,
                     len(elems), miss)
    return a.report()
