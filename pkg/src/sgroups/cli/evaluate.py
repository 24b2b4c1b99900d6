"""Evaluation of calculator expressions against a model.

Values are base individuals, classes of the first extension, or elements of
the second extension (produced by ``glue``). Mixed arithmetic embeds the
simpler operand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sgroups.cli.parser import Node, parse
from sgroups.extension import ExtElement, ExtSGroup, RegionMismatch
from sgroups.models.integer import make_int_sgroup
from sgroups.models.pp import ModelDescriptor, make_pp_sgroup
from sgroups.models.ppfunc import PPFunction, pp_abs, pp_const, pp_saw, pp_x
from sgroups.models.trivial import make_trivial_sgroup
from sgroups.rational import fmt_rational
from sgroups.regions import EMPTY, Interval, intersect, region_key, region_to_json
from sgroups.spaces import Cover, make_pp_sspace
from sgroups.tess import BarElement, bar_glue, bar_prolong, bar_restrict, build_bar, build_tilde

__all__ = ["DomainError", "Calculator", "Result"]


class DomainError(ValueError):
    """An expression that parses but does not denote anything in the model."""


@dataclass(frozen=True)
class Base:
    region: Any
    value: Any


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Result:
    text: str
    payload: dict


def _integer(q: Fraction, what: str) -> int:
    if q.denominator != 1:
        raise DomainError(f"{what} must be an integer, got {fmt_rational(q)}")
    return int(q)


class Calculator:
    """Evaluate expressions in one model.

    Parameters
    ----------
    model : ModelDescriptor
        ``pp`` needs ``domain``; ``trivial`` uses ``modulus``.
    """

    def __init__(self, model: ModelDescriptor):
        self.model = model
        self._ext: dict = {}
        self._bar: dict = {}
        if model.model == "pp":
            if not isinstance(model.domain, Interval):
                raise DomainError("the piecewise model needs --domain (a,b)")
            self.region = model.domain
        elif model.model == "int":
            self.region = None
            self._ext[None] = ExtSGroup(make_int_sgroup())
        else:
            self.region = None
            self._ext[None] = ExtSGroup(make_trivial_sgroup(model.modulus))

    # model plumbing

    def ext(self, region) -> ExtSGroup:
        e = self._ext.get(region)
        if e is None:
            if not isinstance(region, Interval):
                raise DomainError(f"no piecewise group on {region}")
            e = ExtSGroup(make_pp_sgroup(region, ModelDescriptor("pp", region)), region=region)
            self._ext[region] = e
        return e

    def _zero_base(self, region):
        return self.ext(region).base.group.zero

    def to_base(self, v, region):
        if isinstance(v, Base):
            return v
        if isinstance(v, Num):
            if self.model.model == "pp":
                return Base(region, pp_const(region, v.value))
            if self.model.model == "int":
                return Base(None, _integer(v.value, "an integer literal"))
            return Base(None, _integer(v.value, "a residue") % self.model.modulus)
        raise DomainError("expected an individual of the base group")

    def to_class(self, v, region) -> ExtElement:
        if isinstance(v, ExtElement):
            return v
        if isinstance(v, Num) and self.model.model == "int" and v.value.denominator != 1:
            return self.ext(None).pair(v.value.denominator, v.value.numerator)
        b = self.to_base(v, region)
        return self.ext(b.region).embed(b.value)

    # evaluation

    def evaluate(self, text: str):
        return self.eval(parse(text), self.region)

    def eval(self, n: Node, region):
        m = getattr(self, f"_e_{n.op}", None)
        if m is None:
            raise DomainError(f"unsupported construct {n.op}")
        return m(n, region)

    def _e_num(self, n, region):
        return Num(n.args[0])

    def _e_name(self, n, region):
        name = n.args[0]
        if self.model.model == "pp":
            if name == "x":
                return Base(region, pp_x(region))
            if name == "abs":
                return Base(region, pp_abs(region))
        raise DomainError(f"unknown name {name!r} in the {self.model.model} model")

    def _e_call(self, n, region):
        name, args = n.args
        if name == "embed":
            (a,) = self._arity(name, args, 1)
            return self.to_class(self.eval(a, region), region)
        if self.model.model == "pp":
            if name == "abs":
                (a,) = self._arity(name, args, 1)
                return Base(region, self._abs_of(self.to_base(self.eval(a, region), region).value))
            if name == "saw":
                (a,) = self._arity(name, args, 1)
                k = self.eval(a, region)
                if not isinstance(k, Num):
                    raise DomainError("saw(k) needs an integer k")
                k = _integer(k.value, "saw(k)")
                if k < 0:
                    raise DomainError("saw(k) needs k >= 0")
                return Base(region, pp_saw(region, k))
        label = self._label_call(name)
        if label is not None:
            (a,) = self._arity(name, args, 1)
            return self.derive(label, self.eval(a, region), region)
        raise DomainError(f"unknown function {name!r} in the {self.model.model} model")

    def _label_call(self, name):
        import re

        if self.model.model == "int":
            m = re.fullmatch(r"[Ff]_?(\d+)", name)
            if m and int(m.group(1)) >= 1:
                return int(m.group(1))
        if self.model.model == "trivial":
            m = re.fullmatch(r"[Mm]_?(\d+)", name)
            if m:
                k = int(m.group(1))
                if not 0 < k < self.model.modulus:
                    raise DomainError(f"m_{k} is not a label mod {self.model.modulus}")
                return k
        return None

    @staticmethod
    def _arity(name, args, k):
        if len(args) != k:
            raise DomainError(f"{name} takes {k} argument{'s' if k != 1 else ''}, got {len(args)}")
        return args

    def _abs_of(self, f: PPFunction) -> PPFunction:
        if not f.is_polynomial or len(f.pieces[0]) > 2:
            raise DomainError("abs(·) accepts a linear polynomial a*x + b")
        p = f.pieces[0]
        b = p[0] if p else Fraction(0)
        a = p[1] if len(p) == 2 else Fraction(0)
        if a == 0:
            return pp_const(f.domain, abs(b))
        return pp_abs(f.domain, -b / a).scale(abs(a))

    def derive(self, label, v, region):
        if isinstance(v, BarElement):
            return bar_prolong(label, v)
        x = self.to_class(v, region)
        return x.owner.prolong(label, x)

    def _e_D(self, n, region):
        if self.model.model != "pp":
            raise DomainError("D^n is the derivative of the piecewise model; use F_n or M_k here")
        k, arg = n.args
        return self.derive(k, self.eval(arg, region), region)

    def _e_neg(self, n, region):
        v = self.eval(n.args[0], region)
        if isinstance(v, Num):
            return Num(-v.value)
        if isinstance(v, Base):
            return Base(v.region, self.ext(v.region).base.group.neg(v.value))
        return -v

    def _e_add(self, n, region):
        return self.combine(self.eval(n.args[0], region), self.eval(n.args[1], region), region, 1)

    def _e_sub(self, n, region):
        return self.combine(self.eval(n.args[0], region), self.eval(n.args[1], region), region, -1)

    def combine(self, a, b, region, sign):
        if isinstance(a, Num) and isinstance(b, Num):
            return Num(a.value + sign * b.value)
        if isinstance(a, BarElement) or isinstance(b, BarElement):
            bs = (a if isinstance(a, BarElement) else b).space
            a, b = self.to_bar(bs, a, region), self.to_bar(bs, b, region)
            return a + b if sign > 0 else a - b
        if isinstance(a, ExtElement) or isinstance(b, ExtElement) or (
                self.model.model == "int" and any(isinstance(v, Num) and v.value.denominator != 1 for v in (a, b))):
            a, b = self.to_class(a, region), self.to_class(b, region)
            return a + b if sign > 0 else a - b
        a, b = self.to_base(a, region), self.to_base(b, region)
        if a.region != b.region:
            raise RegionMismatch(f"operands live on {a.region} and {b.region}")
        G = self.ext(a.region).base.group
        return Base(a.region, G.add(a.value, b.value) if sign > 0 else G.sub(a.value, b.value))

    def _e_mul(self, n, region):
        a, b = self.eval(n.args[0], region), self.eval(n.args[1], region)
        if isinstance(b, Num) and not isinstance(a, Num):
            a, b = b, a
        if isinstance(a, Num) and isinstance(b, Num):
            return Num(a.value * b.value)
        if isinstance(a, Num):
            return self.scale(a.value, b, region)
        if self.model.model == "pp" and isinstance(a, Base) and isinstance(b, Base):
            if a.region != b.region:
                raise RegionMismatch(f"operands live on {a.region} and {b.region}")
            return Base(a.region, a.value * b.value)
        raise DomainError("only scalars and piecewise functions can be multiplied")

    def scale(self, q: Fraction, v, region):
        if isinstance(v, Base):
            if self.model.model == "pp":
                return Base(v.region, v.value.scale(q))
            k = _integer(q, "a scalar")
            return Base(v.region, self.ext(v.region).base.group.add(0, k * v.value))
        if isinstance(v, ExtElement):
            if self.model.model == "pp":
                return v.owner.pair(v.hom, v.elem.scale(q))
            if self.model.model == "int":
                return v.owner.pair(v.hom * q.denominator, v.elem * q.numerator)
            return v.owner.pair(v.hom, (_integer(q, "a scalar") * v.elem) % self.model.modulus)
        if isinstance(v, BarElement):
            k = _integer(q, "a scalar on a glued element")
            out = v.space.zero(v.region)
            for _ in range(abs(k)):
                out = out + v
            return out if k >= 0 else -out
        raise DomainError("cannot scale this value")

    def _e_pow(self, n, region):
        base, k = n.args
        v = self.eval(base, region)
        if isinstance(v, Num):
            return Num(v.value ** k)
        if self.model.model != "pp" or not isinstance(v, Base):
            raise DomainError("powers apply to piecewise functions")
        out = pp_const(v.region, 1)
        for _ in range(k):
            out = out * v.value
        return Base(v.region, out)

    def _interval(self, node: Node):
        a, b = node.args
        if a is None:
            raise DomainError("restriction to the empty region is not representable here")
        return Interval(a, b)

    def _e_restrict(self, n, region):
        if self.model.model != "pp":
            raise DomainError("restriction needs the piecewise model")
        v = self.eval(n.args[0], region)
        sub = self._interval(n.args[1])
        if isinstance(v, Num):
            return v
        if isinstance(v, BarElement):
            if sub not in v.space.regions:
                raise DomainError(f"{sub} is not a region of the glued space")
            return bar_restrict(v, sub)
        src = v.region if isinstance(v, Base) else v.owner.region
        if not (src.left <= sub.left and sub.right <= src.right):
            raise DomainError(f"{sub} is not inside {src}")
        if isinstance(v, Base):
            return Base(sub, v.value.restrict(sub))
        return self.ext(sub).pair(v.hom, v.elem.restrict(sub))

    def _rows(self, n, region):
        rows = []
        for iv, e in n.args:
            r = self._interval(iv)
            if not (region.left <= r.left and r.right <= region.right):
                raise DomainError(f"{r} is not inside {region}")
            rows.append((r, self.eval(e, r)))
        return rows

    def _e_pw(self, n, region):
        if self.model.model != "pp":
            raise DomainError("piecewise tables need the piecewise model")
        rows = sorted(self._rows(n, region), key=lambda t: t[0].left)
        if rows[0][0].left != region.left or rows[-1][0].right != region.right or any(
                p.right != q.left for (p, _), (q, _) in zip(rows, rows[1:])):
            raise DomainError(f"table cells must tile {region} end to end")
        breaks, pieces = [], []
        for i, (r, v) in enumerate(rows):
            f = self.to_base(v, r).value
            if i:
                breaks.append(r.left)
            breaks.extend(f.breaks)
            pieces.extend(f.pieces)
        f = PPFunction.build(region, breaks, pieces)
        if not f.is_continuous():
            raise DomainError("table pieces do not join continuously")
        return Base(region, f)

    def bar_space(self, regions):
        key = tuple(sorted(regions, key=region_key))
        bs = self._bar.get(key)
        if bs is None:
            space = make_pp_sspace(list(key), ModelDescriptor("pp", self.region))
            bs = build_bar(build_tilde(space, samples=10))
            self._bar[key] = bs
        return bs

    def to_bar(self, bs, v, region) -> BarElement:
        if isinstance(v, BarElement):
            if v.space is not bs:
                raise RegionMismatch("glued elements come from different spaces")
            return v
        x = self.to_class(v, region)
        r = x.owner.region
        if r not in bs.regions:
            raise DomainError(f"{r} is not a region of the glued space")
        return bs.embed(r, bs.tilde.ext[r].pair(x.hom, x.elem))

    def _e_glue(self, n, region):
        if self.model.model != "pp":
            raise DomainError("glue needs the piecewise model")
        rows = self._rows(n, region)
        return self.glue(region, rows)

    def glue(self, region, rows):
        """Glue ``[(interval, value), ...]`` over ``region`` into a second-extension element."""
        parts = [r for r, _ in rows]
        if len(set(parts)) != len(parts):
            raise DomainError("a glue table lists a region twice")
        regs = {region, EMPTY, *parts}
        grow = True
        while grow:
            grow = False
            for a in list(regs):
                for b in list(regs):
                    z = intersect(a, b)
                    if z not in regs:
                        regs.add(z)
                        grow = True
        try:
            cover = Cover(region, tuple(parts))
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
        bs = self.bar_space(regs)
        elems = [self.to_bar(bs, v, r) for r, v in rows]
        return bar_glue(bs, cover, elems)

    # output

    def result(self, v) -> Result:
        """Human rendering and exact serialization of a value."""
        model = self.model.model
        if isinstance(v, Num):
            v = self.to_base(v, self.region) if model != "int" or v.value.denominator == 1 \
                else self.to_class(v, self.region)
        if isinstance(v, Base):
            e = self.ext(v.region)
            enc = e.base.hooks["encode"](v.value)
            text = e.base.group.render(v.value)
            if model == "pp":
                text += " (continuous function)"
            return Result(text, self._payload("individual", v.region, enc))
        if isinstance(v, ExtElement):
            e = v.owner
            return Result(self.render_class(v), self._payload("class", e.region, e.to_json(v)))
        if isinstance(v, BarElement):
            bs = v.space
            text = bs.render(v)
            g = bs.as_tilde(v)
            if g is not None:
                text += f"  =  b({self.render_class(g)})"
            return Result(text, {"model": model, "kind": "glued", "value": bs.to_json(v)})
        raise DomainError(f"cannot display {v!r}")

    def render_class(self, x: ExtElement) -> str:
        e = x.owner
        if self.model.model != "pp":
            return e.render(x)
        k, f = e.reduce(x)
        if k == 0:
            return f"{f.render()} (continuous function)"
        return f"D^{k}[{f.render()}] (not a continuous function)"

    def _payload(self, kind, region, value) -> dict:
        out = {"model": self.model.model, "kind": kind}
        if region is not None:
            out["region"] = region_to_json(region)
        out["value"] = value
        return out


def run_calc(model: ModelDescriptor, text: str) -> Result:
    """Evaluate ``text`` in ``model`` and return its rendering and serialization."""
    c = Calculator(model)
    return c.result(c.evaluate(text))
