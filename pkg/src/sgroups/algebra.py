"""Effectively presented abelian groups, partial homomorphisms and S-groups.

An S-group here is a pair ``(G, H)``: an abelian group ``G`` with decidable
equality, and a semigroup ``H`` of surjective homomorphisms from subgroups of
``G`` onto ``G``. ``H`` is presented by a label monoid; each label has a
:class:`HomOracle` deciding domain and kernel membership, applying the map and
producing one preimage witness.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional

__all__ = [
    "UsageError",
    "GroupModel",
    "LabelMonoid",
    "HomRef",
    "HomOracle",
    "SGroup",
    "Check",
    "AuditReport",
    "Auditor",
    "compose",
    "audit_sgroup",
    "lemma24_suite",
]


class UsageError(ValueError):
    """Raised when operands belong to different structures or violate a precondition."""


@dataclass(frozen=True, eq=False)
class GroupModel:
    """An abelian group given by oracles."""

    eq: Callable[[Any, Any], bool]
    zero: Any
    add: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    sample: Callable[[random.Random], Any]
    render: Callable[[Any], str] = str

    def sub(self, a, b):
        return self.add(a, self.neg(b))


@dataclass(frozen=True, eq=False)
class LabelMonoid:
    """Labels naming the members of ``H``, with composition and identity.

    ``identity`` is ``None`` for a semigroup missing ``I_G``.
    """

    name: str
    compose: Callable[[Hashable, Hashable], Hashable]
    identity: Optional[Hashable]
    sample: Callable[[random.Random], Hashable]
    render: Callable[[Hashable], str] = str
    contains: Callable[[Hashable], bool] = lambda label: True


class HomRef:
    """A label together with the semigroup it belongs to."""

    __slots__ = ("label", "monoid")

    def __init__(self, label: Hashable, monoid: LabelMonoid):
        if not monoid.contains(label):
            raise UsageError(f"{label!r} is not a label of {monoid.name}")
        self.label = label
        self.monoid = monoid

    def __eq__(self, other):
        if not isinstance(other, HomRef):
            return NotImplemented
        return self.monoid.name == other.monoid.name and self.label == other.label

    def __hash__(self):
        return hash((self.monoid.name, self.label))

    def __repr__(self):
        return f"HomRef({self.monoid.render(self.label)} in {self.monoid.name})"


def compose(phi: HomRef, psi: HomRef) -> HomRef:
    """Label of the product ``ΦΨ`` (apply ``Ψ`` first)."""
    if phi.monoid.name != psi.monoid.name:
        raise UsageError(f"cannot compose labels of {phi.monoid.name} and {psi.monoid.name}")
    return HomRef(phi.monoid.compose(phi.label, psi.label), phi.monoid)


@dataclass(frozen=True, eq=False)
class HomOracle:
    """Decision procedures for one member ``Φ`` of ``H``.

    ``kernel_sample`` draws elements of ``N(Φ)``; the default only knows zero.
    """

    in_domain: Callable[[Any], bool]
    apply: Callable[[Any], Any]
    preimage: Callable[[Any], Any]
    in_kernel: Callable[[Any], bool]
    kernel_sample: Optional[Callable[[random.Random], Any]] = None


@dataclass(eq=False)
class SGroup:
    """An S-group ``(G, H)`` with claimed property flags.

    ``key`` identifies the S-group; two SGroup objects with the same key are
    the same structure. ``hooks`` carries optional model extras (encoders,
    display canonicalizers).
    """

    key: str
    group: GroupModel
    monoid: LabelMonoid
    oracle_factory: Callable[[Hashable], HomOracle]
    abelian: bool = True
    surjective: bool = True
    with_identity: bool = True
    model: str = "generic"
    hooks: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def oracle(self, label) -> HomOracle:
        o = self._cache.get(label)
        if o is None:
            if not self.monoid.contains(label):
                raise UsageError(f"{label!r} is not a label of {self.monoid.name}")
            o = self.oracle_factory(label)
            self._cache[label] = o
        return o

    def hom(self, label) -> HomRef:
        return HomRef(label, self.monoid)

    @property
    def identity(self):
        return self.monoid.identity

    def compose(self, a, b):
        return self.monoid.compose(a, b)

    def kernel_sample(self, label, rng: random.Random):
        o = self.oracle(label)
        return o.kernel_sample(rng) if o.kernel_sample else self.group.zero

    def __eq__(self, other):
        return isinstance(other, SGroup) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SGroup({self.key})"


# audit reports


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    samples: int
    counterexample: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed, "samples": self.samples}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass(frozen=True)
class AuditReport:
    title: str
    seed: int
    checks: tuple
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        d = {"title": self.title, "seed": self.seed, "pass": self.passed,
             "checks": [c.to_dict() for c in self.checks]}
        if self.stats:
            d["stats"] = dict(self.stats)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def __str__(self):
        lines = [f"{self.title} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            tail = f"  <- {c.counterexample}" if c.counterexample else ""
            lines.append(f"  [{mark}] {c.name} ({c.samples}){tail}")
        for k, v in self.stats.items():
            lines.append(f"  stat {k}: {v}")
        return "\n".join(lines)


class Auditor:
    """Collects sampled checks into an :class:`AuditReport`.

    ``check(name, n, draw, test)`` draws ``n`` cases with ``draw(rng)`` and
    stops at the first case where ``test(*case)`` is false. Exceptions raised
    by the code under test count as failures.
    """

    def __init__(self, title: str, seed: int, render: Callable[[Any], str] = repr):
        self.title = title
        self.seed = seed
        self.rng = random.Random(seed)
        self.render = render
        self.checks: list = []
        self.stats: dict = {}

    def check(self, name, n, draw, test):
        for i in range(n):
            case = draw(self.rng)
            try:
                ok = test(*case)
            except Exception as exc:  # the structure under audit misbehaved
                self.checks.append(Check(name, False, i + 1, f"{self._show(case)} raised {exc!r}"))
                return False
            if not ok:
                self.checks.append(Check(name, False, i + 1, self._show(case)))
                return False
        self.checks.append(Check(name, True, n))
        return True

    def record(self, name, passed, samples, counterexample=None):
        self.checks.append(Check(name, bool(passed), samples, counterexample))
        return passed

    def _show(self, case):
        try:
            return ", ".join(self.render(c) for c in case)
        except Exception:
            return repr(case)

    def report(self) -> AuditReport:
        return AuditReport(self.title, self.seed, tuple(self.checks), dict(self.stats))


def _renderer(s: SGroup):
    def show(v):
        if isinstance(v, (int, str)):
            return str(v)
        try:
            return s.group.render(v)
        except Exception:
            return repr(v)

    return show


def _domain_element(s: SGroup, label, rng):
    """An element of ``G_Φ``: preimage of a random element plus kernel noise."""
    o = s.oracle(label)
    return s.group.add(o.preimage(s.group.sample(rng)), s.kernel_sample(label, rng))


def _preimage_element(s: SGroup, label, h, rng):
    """A random element of ``Φ⁻¹(h)``."""
    o = s.oracle(label)
    return s.group.add(o.preimage(h), s.kernel_sample(label, rng))


def audit_sgroup(s: SGroup, samples: int = 200, seed: int = 0) -> AuditReport:
    """Sampled check of the abelian, surjective and with-identity S-group laws."""
    if samples < 1:
        raise UsageError("samples must be >= 1")
    G, M = s.group, s.monoid
    a = Auditor(f"S-group audit {s.key}", seed, _renderer(s))
    g1 = lambda r: (G.sample(r),)  # noqa: E731
    g2 = lambda r: (G.sample(r), G.sample(r))  # noqa: E731
    g3 = lambda r: (G.sample(r), G.sample(r), G.sample(r))  # noqa: E731
    a.check("group: equality reflexive and symmetric", samples, g2,
            lambda x, y: G.eq(x, x) and G.eq(x, y) == G.eq(y, x))
    a.check("group: associativity", samples, g3,
            lambda x, y, z: G.eq(G.add(G.add(x, y), z), G.add(x, G.add(y, z))))
    a.check("group: commutativity", samples, g2, lambda x, y: G.eq(G.add(x, y), G.add(y, x)))
    a.check("group: zero is neutral", samples, g1, lambda x: G.eq(G.add(x, G.zero), x))
    a.check("group: inverses", samples, g1, lambda x: G.eq(G.add(x, G.neg(x)), G.zero))

    a.check("semigroup: label associativity", samples,
            lambda r: (M.sample(r), M.sample(r), M.sample(r)),
            lambda p, q, t: M.compose(M.compose(p, q), t) == M.compose(p, M.compose(q, t)))

    def ident_ok(x, p):
        if M.identity is None:
            return False
        o = s.oracle(M.identity)
        return (M.compose(M.identity, p) == p == M.compose(p, M.identity)
                and o.in_domain(x) and G.eq(o.apply(x), x))

    a.check("with identity: I_G present and acting as identity", samples,
            lambda r: (G.sample(r), M.sample(r)), ident_ok)

    def commute_ok(p, q, x):
        if M.compose(p, q) != M.compose(q, p):
            return False
        op, oq = s.oracle(p), s.oracle(q)
        if op.in_domain(x) and oq.in_domain(op.apply(x)) and oq.in_domain(x) and op.in_domain(oq.apply(x)):
            return G.eq(oq.apply(op.apply(x)), op.apply(oq.apply(x)))
        return True

    def draw_commute(r):
        p, q = M.sample(r), M.sample(r)
        x = _domain_element(s, M.compose(p, q), r) if r.random() < 0.5 else G.sample(r)
        return p, q, x

    a.check("abelian: ΦΨ = ΨΦ on labels and elements", samples, draw_commute, commute_ok)

    def coherence_ok(p, q, x):
        op, oq, opq = s.oracle(p), s.oracle(q), s.oracle(M.compose(p, q))
        inner = oq.in_domain(x) and op.in_domain(oq.apply(x))
        if inner != opq.in_domain(x):
            return False
        return not inner or G.eq(opq.apply(x), op.apply(oq.apply(x)))

    def draw_coherence(r):
        p, q = M.sample(r), M.sample(r)
        if r.random() < 0.7:
            x = s.oracle(q).preimage(_domain_element(s, p, r))
        else:
            x = G.sample(r)
        return p, q, x

    a.check("composition: (ΦΨ)(g) = Φ(Ψ(g))", samples, draw_coherence, coherence_ok)

    def surj_ok(p, h):
        o = s.oracle(p)
        w = o.preimage(h)
        return o.in_domain(w) and G.eq(o.apply(w), h)

    a.check("surjective: preimage witness maps back", samples, lambda r: (M.sample(r), G.sample(r)), surj_ok)

    def subgroup_ok(p, x, y):
        o = s.oracle(p)
        return o.in_domain(G.zero) and o.in_domain(G.add(x, y)) and o.in_domain(G.neg(x))

    a.check("domains are subgroups", samples,
            lambda r: (lambda p: (p, _domain_element(s, p, r), _domain_element(s, p, r)))(M.sample(r)),
            subgroup_ok)

    def kernel_ok(p, x, k):
        o = s.oracle(p)
        for v in (x, k):
            expect = o.in_domain(v) and G.eq(o.apply(v), G.zero)
            if o.in_kernel(v) != expect:
                return False
        return o.in_kernel(k)

    a.check("kernel: N(Φ) = {g ∈ G_Φ : Φ(g) = 0}", samples,
            lambda r: (lambda p: (p, G.sample(r), s.kernel_sample(p, r)))(M.sample(r)), kernel_ok)

    a.check("kernel: N(Φ) is a subgroup", samples,
            lambda r: (lambda p: (p, s.kernel_sample(p, r), s.kernel_sample(p, r)))(M.sample(r)),
            lambda p, u, v: s.oracle(p).in_kernel(G.sub(u, v)))
    return a.report()


def lemma24_suite(s: SGroup, samples: int = 200, seed: int = 0) -> AuditReport:
    """Witness-level check of the preimage and kernel identities (a) to (h).

    Preimage sets are kernel cosets ``w + N(Φ)``, so an element of a set is a
    witness plus sampled kernel noise and every membership claim reduces to a
    domain test, an application and an equality.
    """
    G, M = s.group, s.monoid
    a = Auditor(f"preimage/kernel identities {s.key}", seed, _renderer(s))
    orc = s.oracle
    comp = M.compose

    def in_pre(p, x, target):
        o = orc(p)
        return o.in_domain(x) and G.eq(o.apply(x), target)

    def in_pre_pre(outer, inner, x, target):
        """x ∈ outer⁻¹(inner⁻¹(target)): outer(x) ∈ inner⁻¹(target)."""
        o = orc(outer)
        return o.in_domain(x) and in_pre(inner, o.apply(x), target)

    def kz(p, r):
        return s.kernel_sample(p, r)

    # (a) F ⊆ K and L ⊆ M give F ± L ⊆ K ± M, with F, L samples of K = Φ⁻¹(g), M = Ψ⁻¹(h)
    def draw_a(r):
        p, q, g, h = M.sample(r), M.sample(r), G.sample(r), G.sample(r)
        return p, q, g, h, _preimage_element(s, p, g, r), _preimage_element(s, q, h, r), r.choice((1, -1))

    def test_a(p, q, g, h, f, l, sign):
        x = G.add(f, l) if sign == 1 else G.sub(f, l)
        back = G.sub(x, l) if sign == 1 else G.add(x, l)
        return in_pre(p, f, g) and in_pre(q, l, h) and G.eq(back, f)

    a.check("(a) F ± L ⊆ K ± M", samples, draw_a, test_a)

    # (b) F ⊆ K gives Φ⁻¹(F) ⊆ Φ⁻¹(K), with F = {f} and K = Ψ⁻¹(h) ∋ f
    def draw_b(r):
        p, q, h = M.sample(r), M.sample(r), G.sample(r)
        f = _preimage_element(s, q, h, r)
        return p, q, h, f, _preimage_element(s, p, f, r)

    a.check("(b) Φ⁻¹(F) ⊆ Φ⁻¹(K)", samples, draw_b,
            lambda p, q, h, f, x: in_pre(p, x, f) and in_pre_pre(p, q, x, h))

    # (c) Φ⁻¹Ψ⁻¹ = Ψ⁻¹Φ⁻¹ and (ΦΨ)⁻¹ = Ψ⁻¹Φ⁻¹, both inclusions
    def draw_c(r):
        p, q, g = M.sample(r), M.sample(r), G.sample(r)
        lhs = G.add(orc(p).preimage(orc(q).preimage(g)), kz(comp(q, p), r))
        rhs = G.add(orc(q).preimage(orc(p).preimage(g)), kz(comp(p, q), r))
        both = _preimage_element(s, comp(p, q), g, r)
        return p, q, g, lhs, rhs, both

    def test_c(p, q, g, lhs, rhs, both):
        pq = comp(p, q)
        return (in_pre_pre(p, q, lhs, g) and in_pre_pre(q, p, lhs, g)
                and in_pre_pre(q, p, rhs, g) and in_pre_pre(p, q, rhs, g)
                and in_pre(pq, rhs, g) and in_pre_pre(q, p, both, g))

    a.check("(c) Φ⁻¹Ψ⁻¹(g) = Ψ⁻¹Φ⁻¹(g) = (ΦΨ)⁻¹(g)", samples, draw_c, test_c)

    # (d) φ⁻¹(Ψ⁻¹g) ± φ⁻¹(Φ⁻¹h) ⊆ φ⁻¹(Ψ⁻¹g ± Φ⁻¹h)
    def draw_d(r):
        p, q, f = M.sample(r), M.sample(r), M.sample(r)
        g, h = G.sample(r), G.sample(r)
        u = G.add(orc(f).preimage(orc(q).preimage(g)), kz(comp(q, f), r))
        v = G.add(orc(f).preimage(orc(p).preimage(h)), kz(comp(p, f), r))
        return p, q, f, g, h, u, v, r.choice((1, -1))

    def test_d(p, q, f, g, h, u, v, sign):
        x = G.add(u, v) if sign == 1 else G.sub(u, v)
        of = orc(f)
        if not of.in_domain(x):
            return False
        fu, fv = of.apply(u), of.apply(v)
        fx = of.apply(x)
        recombined = G.add(fu, fv) if sign == 1 else G.sub(fu, fv)
        return G.eq(fx, recombined) and in_pre(q, fu, g) and in_pre(p, fv, h)

    a.check("(d) φ⁻¹Ψ⁻¹g ± φ⁻¹Φ⁻¹h ⊆ φ⁻¹(Ψ⁻¹g ± Φ⁻¹h)", samples, draw_d, test_d)

    # (e) φ⁻¹(Ψ⁻¹g ± Φ⁻¹h) ⊆ φ⁻¹Ψ⁻¹g ± φ⁻¹Φ⁻¹h + N(φ)
    def draw_e(r):
        p, q, f = M.sample(r), M.sample(r), M.sample(r)
        g, h = G.sample(r), G.sample(r)
        u = _preimage_element(s, q, g, r)
        v = _preimage_element(s, p, h, r)
        sign = r.choice((1, -1))
        y = G.add(u, v) if sign == 1 else G.sub(u, v)
        x = _preimage_element(s, f, y, r)
        return p, q, f, g, h, u, v, sign, x

    def test_e(p, q, f, g, h, u, v, sign, x):
        of = orc(f)
        a1, b1 = of.preimage(u), of.preimage(v)
        rest = G.sub(x, G.add(a1, b1) if sign == 1 else G.sub(a1, b1))
        return (in_pre_pre(f, q, a1, g) and in_pre_pre(f, p, b1, h) and of.in_kernel(rest))

    a.check("(e) φ⁻¹(Ψ⁻¹g ± Φ⁻¹h) ⊆ φ⁻¹Ψ⁻¹g ± φ⁻¹Φ⁻¹h + N(φ)", samples, draw_e, test_e)

    # (f) N(ΦΨ) = Φ⁻¹(N(Ψ)) + Ψ⁻¹(N(Φ)) + N(Φ) + N(Ψ)
    def draw_f(r):
        p, q = M.sample(r), M.sample(r)
        x = kz(comp(p, q), r)
        a1 = G.add(orc(p).preimage(kz(q, r)), kz(p, r))
        b1 = G.add(orc(q).preimage(kz(p, r)), kz(q, r))
        return p, q, x, a1, b1, kz(p, r), kz(q, r)

    def test_f(p, q, x, a1, b1, c1, d1):
        op, oq = orc(p), orc(q)
        # x = (x + x) + (-x) + 0 + 0 with each summand in its set
        xx, mx = G.add(x, x), G.neg(x)
        sub_ok = (op.in_domain(xx) and oq.in_kernel(op.apply(xx))
                  and oq.in_domain(mx) and op.in_kernel(oq.apply(mx))
                  and G.eq(G.add(xx, mx), x))
        total = G.add(G.add(a1, b1), G.add(c1, d1))
        sup_ok = (op.in_domain(a1) and oq.in_kernel(op.apply(a1))
                  and oq.in_domain(b1) and op.in_kernel(oq.apply(b1))
                  and op.in_kernel(c1) and oq.in_kernel(d1)
                  and orc(comp(p, q)).in_kernel(total))
        return sub_ok and sup_ok

    a.check("(f) N(ΦΨ) = Φ⁻¹N(Ψ) + Ψ⁻¹N(Φ) + N(Φ) + N(Ψ)", samples, draw_f, test_f)

    # (g) N(ΨφΦ) + N(Ψ) + N(Φ) ⊆ N(ΨφΦ)
    def draw_g(r):
        p, q, f = M.sample(r), M.sample(r), M.sample(r)
        lab = comp(q, comp(f, p))
        return lab, kz(lab, r), kz(q, r), kz(p, r)

    a.check("(g) N(ΨφΦ) + N(Ψ) + N(Φ) ⊆ N(ΨφΦ)", samples, draw_g,
            lambda lab, x, y, z: orc(lab).in_kernel(G.add(G.add(x, y), z)))

    # (h) h = Φ(g) and g ∈ N(ΦΨ) give h ∈ N(Ψ)
    def draw_h(r):
        p, q = M.sample(r), M.sample(r)
        return p, q, kz(comp(p, q), r)

    def test_h(p, q, g):
        op = orc(p)
        return op.in_domain(g) and orc(q).in_kernel(op.apply(g))

    a.check("(h) Φ(N(ΦΨ)) ⊆ N(Ψ)", samples, draw_h, test_h)
    return a.report()
