"""The strict and closed extension ``[H×G]~`` of an abelian, surjective S-group with identity.

Elements are classes ``[Φ, g]`` of pairs, read as "``Φ`` applied to ``g``"
even when ``g`` lies outside the domain of ``Φ``. Two pairs are equivalent
when one preimage witness of each, pushed to the common label ``ΦΨ``, differ
by a kernel element. Preimage sets are kernel cosets, so this single test
decides the relation exactly.

Examples
--------
>>> from sgroups.models.integer import make_int_sgroup
>>> Z = ExtSGroup(make_int_sgroup())
>>> Z.pair(2, 1) + Z.pair(3, 1) == Z.pair(6, 5)
True
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Optional

from sgroups.algebra import (
    AuditReport,
    Auditor,
    GroupModel,
    HomOracle,
    HomRef,
    LabelMonoid,
    SGroup,
    UsageError,
    _domain_element,
    audit_sgroup,
)

__all__ = [
    "ExtensionRefused",
    "RegionMismatch",
    "PairElement",
    "ExtElement",
    "ExtSGroup",
    "sim",
    "ext_add",
    "ext_embed",
    "prolong_apply",
    "verify_strict",
    "verify_closed",
    "LiftSpec",
    "LiftRefused",
    "LiftedHom",
    "lift_hom",
]


class ExtensionRefused(RuntimeError):
    """The base structure does not meet the hypotheses of the construction."""

    def __init__(self, message, report: Optional[AuditReport] = None):
        super().__init__(message)
        self.report = report


class RegionMismatch(TypeError):
    """Elements of extensions over different regions or S-groups were combined."""


@dataclass(frozen=True)
class PairElement:
    """A pair ``(Φ, g)``; ``g`` need not lie in the domain of ``Φ``."""

    hom: Hashable
    elem: Any
    owner: "ExtSGroup"

    @property
    def hom_ref(self) -> HomRef:
        return self.owner.base.hom(self.hom)


class ExtElement:
    """The class ``[Φ, g]``. Equality goes through :func:`sim`; the class is unhashable."""

    __slots__ = ("rep",)
    __hash__ = None

    def __init__(self, rep: PairElement):
        self.rep = rep

    @property
    def owner(self) -> "ExtSGroup":
        return self.rep.owner

    @property
    def hom(self):
        return self.rep.hom

    @property
    def elem(self):
        return self.rep.elem

    def _peer(self, other) -> "ExtElement":
        if not isinstance(other, ExtElement):
            raise RegionMismatch(f"cannot combine a class with {type(other).__name__}")
        if other.owner.key != self.owner.key:
            raise RegionMismatch(f"classes of {self.owner.name} and {other.owner.name} are never comparable")
        return other

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return sim(self.rep, self._peer(other).rep)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __add__(self, other):
        return ext_add(self, self._peer(other))

    def __neg__(self):
        return self.owner.neg(self)

    def __sub__(self, other):
        return ext_add(self, -self._peer(other))

    def __repr__(self):
        return f"ExtElement({self.owner.render(self)})"

    def __str__(self):
        return self.owner.render(self)


class ExtSGroup:
    """``𝔾̃ = ([H×G]~, H̃)`` over a base S-group, optionally tagged with a region.

    The prolonged semigroup ``H̃`` uses the labels of ``H`` unchanged.

    Parameters
    ----------
    base : SGroup
        Must claim to be abelian, surjective and with identity.
    region : hashable, optional
        Tag used to keep extensions over different regions apart.
    """

    def __init__(self, base: SGroup, region=None):
        missing = [f for f in ("abelian", "surjective", "with_identity") if not getattr(base, f)]
        if missing or base.identity is None:
            raise ExtensionRefused(f"{base.key} is not {', '.join(missing) or 'with identity'}")
        self.base = base
        self.region = region
        self.key = (base.key, region)
        self.name = base.key if region is None else f"{base.key}@{region}"
        self._sgroup = None

    @classmethod
    def checked(cls, base: SGroup, samples: int = 100, seed: int = 0, region=None) -> "ExtSGroup":
        """Audit ``base`` first and refuse with the report if any law fails."""
        rep = audit_sgroup(base, samples, seed)
        if not rep.passed:
            raise ExtensionRefused(f"{base.key} failed its S-group audit", rep)
        return cls(base, region)

    @property
    def monoid(self) -> LabelMonoid:
        return self.base.monoid

    # construction

    def pair(self, label, g) -> ExtElement:
        if not self.base.monoid.contains(label):
            raise UsageError(f"{label!r} is not a label of {self.base.monoid.name}")
        return ExtElement(PairElement(label, g, self))

    def embed(self, g) -> ExtElement:
        return self.pair(self.base.identity, g)

    @property
    def zero(self) -> ExtElement:
        return self.embed(self.base.group.zero)

    def add(self, a: ExtElement, b: ExtElement) -> ExtElement:
        return ext_add(a, b)

    def neg(self, a: ExtElement) -> ExtElement:
        return self.pair(a.hom, self.base.group.neg(a.elem))

    def prolong(self, label, a: ExtElement) -> ExtElement:
        return prolong_apply(label, a)

    def eq(self, a: ExtElement, b: ExtElement) -> bool:
        return a == b

    def sample(self, rng: random.Random) -> ExtElement:
        return self.pair(self.base.monoid.sample(rng), self.base.group.sample(rng))

    def respell(self, a: ExtElement, rng: random.Random) -> ExtElement:
        """Another representative of the same class: ``[ΦΨ, w + k]`` with ``Ψ(w) = g``, ``k ∈ N(ΦΨ)``."""
        s = self.base
        psi = s.monoid.sample(rng)
        lab = s.compose(a.hom, psi)
        w = s.group.add(s.oracle(psi).preimage(a.elem), s.kernel_sample(lab, rng))
        return self.pair(lab, w)

    # inspection

    def as_base(self, a: ExtElement):
        """``h`` with ``[Ψ, g] = [I_G, h]``, or ``None`` when the class is not embedded.

        ``[Ψ, g] ~ [I_G, h]`` holds exactly when ``g ∈ G_Ψ`` and ``Ψ(g) = h``.
        """
        o = self.base.oracle(a.hom)
        return o.apply(a.elem) if o.in_domain(a.elem) else None

    def is_embedded(self, a: ExtElement) -> bool:
        return self.base.oracle(a.hom).in_domain(a.elem)

    def reduce(self, a: ExtElement):
        red = self.base.hooks.get("reduce")
        return red(a.hom, a.elem) if red else (a.hom, a.elem)

    def render(self, a: ExtElement) -> str:
        s = self.base
        if a == self.zero:
            return "[I_G, 0]"
        lab, g = self.reduce(a)
        out = f"[{s.monoid.render(lab)}, {s.group.render(g)}]"
        suffix = s.hooks.get("ext_suffix")
        return out + suffix(lab, g) if suffix else out

    def to_json(self, a: ExtElement):
        enc = self.base.hooks.get("encode_ext")
        if enc is None:
            raise UsageError(f"{self.base.key} has no serializer")
        return enc(*self.reduce(a))

    def from_json(self, obj) -> ExtElement:
        dec = self.base.hooks.get("decode_ext")
        if dec is None:
            raise UsageError(f"{self.base.key} has no serializer")
        return self.pair(*dec(obj))

    # the extension as an S-group in its own right

    def as_sgroup(self) -> SGroup:
        """``(G̃, H̃)`` with every ``Φ̃`` total.

        The preimage of ``[Ψ, g]`` under ``Φ̃`` is ``[Ψ, Φ⁻¹(g)]`` and the
        kernel of ``Φ̃`` is sampled as ``[Ψ, k]`` with ``k ∈ N(ΦΨ)``.
        """
        if self._sgroup is not None:
            return self._sgroup
        base = self.base
        group = GroupModel(
            eq=lambda a, b: a == b,
            zero=self.zero,
            add=ext_add,
            neg=self.neg,
            sample=self.sample,
            render=self.render,
        )

        def oracle(label) -> HomOracle:
            o = base.oracle(label)

            def ksample(rng):
                psi = base.monoid.sample(rng)
                return self.pair(psi, base.kernel_sample(base.compose(label, psi), rng))

            return HomOracle(
                in_domain=lambda a: isinstance(a, ExtElement) and a.owner.key == self.key,
                apply=lambda a: prolong_apply(label, a),
                preimage=lambda a: self.pair(a.hom, o.preimage(a.elem)),
                in_kernel=lambda a: prolong_apply(label, a) == self.zero,
                kernel_sample=ksample,
            )

        hooks = {
            "encode": self.to_json,
            "decode": self.from_json,
            "ext": self,
        }
        self._sgroup = SGroup(f"ext({self.name})", group, base.monoid, oracle,
                              model=f"ext-{base.model}", hooks=hooks)
        return self._sgroup

    def __repr__(self):
        return f"ExtSGroup({self.name})"


def _same_owner(p: PairElement, q: PairElement) -> "ExtSGroup":
    if p.owner.key != q.owner.key:
        raise UsageError(f"pairs over {p.owner.name} and {q.owner.name}")
    return p.owner


def sim(p: PairElement, q: PairElement) -> bool:
    """Decide ``(Φ, g) ~ (Ψ, h)``.

    With ``g* = Ψ⁻¹(g)`` and ``h* = Φ⁻¹(h)`` (one witness each), the pairs are
    equivalent iff ``g* - h* ∈ N(ΦΨ)``.
    """
    s = _same_owner(p, q).base
    if p.hom == q.hom and s.group.eq(p.elem, q.elem):
        return True
    gs = s.oracle(q.hom).preimage(p.elem)
    hs = s.oracle(p.hom).preimage(q.elem)
    return s.oracle(s.compose(p.hom, q.hom)).in_kernel(s.group.sub(gs, hs))


def ext_add(a: ExtElement, b: ExtElement) -> ExtElement:
    """``[Φ, g] + [Ψ, h] = [ΦΨ, Ψ⁻¹(g) + Φ⁻¹(h)]``."""
    e = _same_owner(a.rep, b.rep)
    s = e.base
    gs = s.oracle(b.hom).preimage(a.elem)
    hs = s.oracle(a.hom).preimage(b.elem)
    return e.pair(s.compose(a.hom, b.hom), s.group.add(gs, hs))


def ext_embed(e: ExtSGroup, g) -> ExtElement:
    """``g ↦ [I_G, g]``, an injective homomorphism."""
    return e.embed(g)


def prolong_apply(label, a: ExtElement) -> ExtElement:
    """``Φ̃([Ψ, g]) = [ΦΨ, g]``."""
    e = a.owner
    return e.pair(e.base.compose(label, a.hom), a.elem)


# verification


def _render(e: ExtSGroup):
    def show(v):
        if isinstance(v, ExtElement):
            return e.render(v)
        if isinstance(v, (int, str)):
            return str(v)
        try:
            return e.base.group.render(v)
        except Exception:
            return repr(v)

    return show


def verify_strict(e: ExtSGroup, samples: int = 200, seed: int = 0, probes: int = 8) -> AuditReport:
    """Strictness in kernel form and by direct probing against embedded elements.

    Kernel form: ``Φ̃(embed g) = 0̃`` iff ``g ∈ N(Φ)``, on plain samples and on
    kernel samples. Direct form: for ``g ∉ G_Φ``, ``Φ̃(embed g)`` differs from
    ``embed h`` for ``h = 0`` and ``probes`` sampled ``h``.
    """
    s, G = e.base, e.base.group
    a = Auditor(f"strictness {e.name}", seed, _render(e))

    def draw_kernel(r):
        lab = s.monoid.sample(r)
        g = s.kernel_sample(lab, r) if r.random() < 0.3 else G.sample(r)
        return lab, g

    a.check("kernel form: Φ̃(g) = 0 iff g ∈ N(Φ)", samples, draw_kernel,
            lambda lab, g: (prolong_apply(lab, e.embed(g)) == e.zero) == s.oracle(lab).in_kernel(g))

    def draw_outside(r):
        for _ in range(50):
            lab, g = s.monoid.sample(r), G.sample(r)
            if not s.oracle(lab).in_domain(g):
                break
        hs = [G.zero] + [G.sample(r) for _ in range(probes)]
        return lab, g, hs

    def test_outside(lab, g, hs):
        if s.oracle(lab).in_domain(g):
            return G.eq(e.as_base(prolong_apply(lab, e.embed(g))), s.oracle(lab).apply(g))
        img = prolong_apply(lab, e.embed(g))
        return all(img != e.embed(h) for h in hs)

    a.check("direct form: g ∉ G_Φ gives Φ̃(g) ∉ G", samples, draw_outside, test_outside)

    def draw_inside(r):
        lab = s.monoid.sample(r)
        return lab, _domain_element(s, lab, r)

    a.check("Φ̃ restricts to Φ on G_Φ", samples, draw_inside,
            lambda lab, g: prolong_apply(lab, e.embed(g)) == e.embed(s.oracle(lab).apply(g)))
    return a.report()


def verify_closed(e: ExtSGroup, samples: int = 200, seed: int = 0) -> AuditReport:
    """Every class ``[Φ, g]`` equals ``Φ̃(embed g)``, also after respelling the representative."""
    a = Auditor(f"closedness {e.name}", seed, _render(e))

    def draw(r):
        x = e.sample(r)
        return x, e.respell(x, r)

    def test(x, y):
        return x == prolong_apply(x.hom, e.embed(x.elem)) and y == prolong_apply(y.hom, e.embed(y.elem)) and x == y

    a.check("closed: [Φ, g] = Φ̃(embed g)", samples, draw, test)
    return a.report()


# lifting homomorphisms


class LiftRefused(ExtensionRefused):
    """The lift hypotheses failed on samples; ``report`` holds the counterexample."""


@dataclass(frozen=True)
class LiftSpec:
    """Data for lifting ``h: G → E`` to the extensions.

    ``label_map`` is the semigroup isomorphism ``Φ ↦ Φ*``. The hypotheses are
    ``h(Φ(g)) = Φ*(h(g))`` on ``G_Φ`` and ``h(N(Φ)) ⊆ N(Φ*)``.
    """

    source: ExtSGroup
    target: ExtSGroup
    label_map: Callable[[Hashable], Hashable]
    h: Callable[[Any], Any]


class LiftedHom:
    """``ĥ([Φ, g]) = [Φ*, h(g)]``."""

    def __init__(self, spec: LiftSpec, report: AuditReport):
        self.spec = spec
        self.report = report

    def __call__(self, a: ExtElement) -> ExtElement:
        sp = self.spec
        if a.owner.key != sp.source.key:
            raise RegionMismatch(f"lift expects classes of {sp.source.name}, got {a.owner.name}")
        return sp.target.pair(sp.label_map(a.hom), sp.h(a.elem))


def audit_lift(spec: LiftSpec, samples: int = 100, seed: int = 0) -> AuditReport:
    S, T = spec.source.base, spec.target.base
    G, E = S.group, T.group
    star, h = spec.label_map, spec.h
    a = Auditor(f"lift hypotheses {spec.source.name} -> {spec.target.name}", seed, _render(spec.source))
    a.check("label map is a semigroup homomorphism", samples,
            lambda r: (S.monoid.sample(r), S.monoid.sample(r)),
            lambda p, q: star(S.compose(p, q)) == T.compose(star(p), star(q)))
    a.check("label map sends I_G to I_E", 1, lambda r: (), lambda: star(S.identity) == T.identity)
    a.check("h is a homomorphism", samples, lambda r: (G.sample(r), G.sample(r)),
            lambda x, y: E.eq(h(G.add(x, y)), E.add(h(x), h(y))))

    def draw_dom(r):
        lab = S.monoid.sample(r)
        return lab, _domain_element(S, lab, r)

    def test_dom(lab, g):
        o = T.oracle(star(lab))
        hg = h(g)
        return o.in_domain(hg) and E.eq(h(S.oracle(lab).apply(g)), o.apply(hg))

    a.check("(a) h(Φ(g)) = Φ*(h(g))", samples, draw_dom, test_dom)
    a.check("(b) h(N(Φ)) ⊆ N(Φ*)", samples,
            lambda r: (lambda lab: (lab, S.kernel_sample(lab, r)))(S.monoid.sample(r)),
            lambda lab, k: T.oracle(star(lab)).in_kernel(h(k)))
    return a.report()


def lift_hom(spec: LiftSpec, samples: int = 100, seed: int = 0) -> LiftedHom:
    """Audit the hypotheses, then return the unique lift ``ĥ``.

    Raises
    ------
    LiftRefused
        If a hypothesis fails on the samples.
    """
    rep = audit_lift(spec, samples, seed)
    if not rep.passed:
        raise LiftRefused(f"lift refused: {rep.failures()[0].name}", rep)
    return LiftedHom(spec, rep)
