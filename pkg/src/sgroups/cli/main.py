"""``sgroups`` command line: demo, calc, audit, glue and extend.

Exit codes: 0 success or all checks pass, 1 a check failed or a construction
was refused, 2 malformed input (unreadable file, parse or domain error).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from sgroups.algebra import AuditReport, UsageError, audit_sgroup, lemma24_suite
from sgroups.axiomatics import (
    FULL, MUTATIONS, PARTNER, candidate_from_bar, candidate_from_ext,
    candidate_from_tilde, check_system, mutate, mutate_sgroup,
)
from sgroups.cli.demos import DEMOS, run_demo
from sgroups.cli.evaluate import Calculator, DomainError
from sgroups.cli.parser import ParseError, parse, parse_interval_text
from sgroups.extension import ExtensionRefused, ExtSGroup, RegionMismatch, verify_closed, verify_strict
from sgroups.models.pp import ModelDescriptor, ResourceError
from sgroups.regions import Interval
from sgroups.spaces import Incoherent, sspace_from_json, sspace_validate
from sgroups.tess import build_bar, build_tilde, verify_1tess, verify_2tess

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
LEVELS = ("sgroup", "sspace", "tess1", "tess2", "axioms")


class InputError(Exception):
    """Bad flags or an unreadable --spec file; exit code 2."""


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _write(path, obj):
    if path:
        Path(path).write_text(_dump(obj) + "\n", encoding="utf-8")


def _domain(text):
    try:
        iv = parse_interval_text(text)
    except ParseError as exc:
        raise InputError(f"bad --domain {text!r}: {exc}") from exc
    if iv is None:
        raise InputError("--domain must be a nonempty interval")
    return Interval(*iv)


def _descriptor(args) -> ModelDescriptor:
    model = args.model or "pp"
    try:
        if model == "pp":
            return ModelDescriptor("pp", _domain(args.domain or "(-1,1)"))
        return ModelDescriptor(model, modulus=args.modulus)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_spec(args) -> dict:
    if args.spec:
        try:
            obj = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read {args.spec}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.spec} is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise InputError(f"{args.spec} must hold a JSON object")
        return obj
    obj = {"model": args.model or "int"}
    if obj["model"] == "pp":
        obj["domain"] = args.domain or "(-1,1)"
    if obj["model"] == "trivial":
        obj["modulus"] = args.modulus
    return obj


def _space(spec: dict):
    try:
        s = sspace_from_json(spec)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad space description: {exc}") from exc
    flags = spec.get("flags") or {}
    bad = set(flags) - {"abelian", "surjective", "with_identity"}
    if bad:
        raise InputError(f"unknown flags {sorted(bad)}")
    if flags:
        s = replace(s, **{k: bool(v) for k, v in flags.items()})
    return s, flags


def _merge(title, seed, *reports) -> AuditReport:
    checks, stats = [], {}
    for r in reports:
        checks.extend(r.checks)
        stats.update(r.stats)
    return AuditReport(title, seed, tuple(checks), stats)


# commands


def cmd_demo(args) -> int:
    print(run_demo(args.name))
    return EXIT_OK


def cmd_calc(args) -> int:
    calc = Calculator(_descriptor(args))
    res = calc.result(calc.evaluate(args.expr))
    print(res.text)
    print(json.dumps(res.payload, ensure_ascii=False))
    _write(args.out, res.payload)
    return EXIT_OK


def _single_group(s, flags):
    g = s.group(s.ground)
    return replace(g, _cache={}, **{k: bool(v) for k, v in flags.items()}) if flags else g


def _candidate(s, flags, system, samples, seed):
    if system in ("2.20", "2.25"):
        if len(s.regions) != 1:
            raise InputError(f"system {system} needs a single-region space")
        return candidate_from_ext(ExtSGroup(_single_group(s, flags)))
    t = build_tilde(s, samples=min(samples, 30), seed=seed)
    if system in ("5.12", "5.17"):
        return candidate_from_tilde(t)
    return candidate_from_bar(build_bar(t))


def cmd_audit(args) -> int:
    spec = _load_spec(args)
    s, flags = _space(spec)
    level, n, seed = args.level, args.samples, args.seed
    if args.mutate and level not in ("axioms", "sgroup"):
        raise InputError(f"--mutate applies to the axioms and sgroup levels, not {level}")
    if level == "sgroup":
        g = _single_group(s, flags)
        if args.mutate:
            if args.mutate != "identity":
                raise InputError("only --mutate identity applies at the sgroup level")
            g = mutate_sgroup(g)
        rep = _merge(f"S-group {g.key}", seed, audit_sgroup(g, n, seed), lemma24_suite(g, n, seed))
    elif level == "sspace":
        rep = sspace_validate(s, n, seed)
    elif level == "tess1":
        if len(s.regions) == 1:
            e = ExtSGroup.checked(_single_group(s, flags), n, seed)
            rep = _merge(f"extension of {e.name}", seed, verify_strict(e, n, seed), verify_closed(e, n, seed))
        else:
            rep = verify_1tess(build_tilde(s, seed=seed), n, seed)
    elif level == "tess2":
        rep = verify_2tess(build_bar(build_tilde(s, seed=seed)), n, seed)
    else:
        system = spec.get("system") or ("2.20" if len(s.regions) == 1 else "5.21")
        if system not in PARTNER:
            raise InputError(f"unknown axiom system {system!r}")
        want_full = args.variant == "full"
        if (system in FULL) != want_full:
            system = PARTNER[system]
        c = _candidate(s, flags, system, n, seed)
        if args.mutate:
            c = mutate(c, args.mutate)
        rep = check_system(c, system, n, seed)
    print(rep)
    _write(args.out, rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _glue_rows(args):
    if args.spec:
        spec = _load_spec(args)
        domain = spec.get("domain")
        patches = spec.get("patches")
        if not isinstance(domain, str) or not isinstance(patches, dict) or not patches:
            raise InputError("the glue --spec file needs 'domain' and a nonempty 'patches' object")
        return _domain(domain), list(patches.items())
    if not args.patches:
        raise InputError("give patches as REGION=EXPR or a --spec file")
    rows = []
    for item in args.patches:
        if "=" not in item:
            raise InputError(f"patch {item!r} is not REGION=EXPR")
        reg, expr = item.split("=", 1)
        rows.append((reg.strip(), expr))
    return _domain(args.domain or "(0,3)"), rows


def cmd_glue(args) -> int:
    domain, raw = _glue_rows(args)
    calc = Calculator(ModelDescriptor("pp", domain))
    rows = []
    for reg, expr in raw:
        iv = _domain(reg)
        if not (domain.left <= iv.left and iv.right <= domain.right):
            raise InputError(f"{iv} is not inside {domain}")
        rows.append((iv, calc.eval(parse(expr), iv)))
    for iv, v in rows:
        print(f"patch {iv}: {calc.result(v).text}")
    try:
        g = calc.glue(domain, rows)
    except Incoherent as exc:
        p, q = exc.pair
        print(f"incoherent: the patches on {p} and {q} disagree on their overlap")
        return EXIT_FAIL
    res = calc.result(g)
    print("all overlaps agree")
    print(f"glued: {res.text}")
    print(json.dumps(res.payload, ensure_ascii=False))
    _write(args.out, res.payload)
    return EXIT_OK


def cmd_extend(args) -> int:
    spec = _load_spec(args)
    s, flags = _space(spec)
    n, seed = args.samples, args.seed
    if len(s.regions) == 1:
        e = ExtSGroup.checked(_single_group(s, flags), n, seed)
        rep = _merge(f"extension of {e.name}", seed, verify_strict(e, n, seed), verify_closed(e, n, seed))
    else:
        t = build_tilde(s, samples=min(n, 30), seed=seed)
        rep = verify_1tess(t, n, seed)
        print(f"first extension over {len(s.regions)} regions, {len(t.lifts)} lifted restrictions")
    print(rep)
    _write(args.out, rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_FAIL


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, samples=50):
        q.add_argument("--model", choices=("int", "pp", "trivial"))
        q.add_argument("--domain", help='interval such as "(-1,1)" for the piecewise model')
        q.add_argument("--modulus", type=int, default=5, help="prime modulus of the trivial model")
        q.add_argument("--spec", help="JSON description of the space")
        q.add_argument("--samples", type=int, default=samples)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--out", help="write the JSON result here")

    d = sub.add_parser("demo", help="print a worked transcript")
    d.add_argument("name", choices=sorted(DEMOS))
    d.set_defaults(func=cmd_demo)

    c = sub.add_parser("calc", help="evaluate an expression")
    common(c)
    c.add_argument("expr")
    c.set_defaults(func=cmd_calc)

    a = sub.add_parser("audit", help="audit laws or axioms and write a report")
    common(a)
    a.add_argument("--level", choices=LEVELS, default="axioms")
    a.add_argument("--variant", choices=("full", "simplified"), default="full")
    a.add_argument("--mutate", choices=MUTATIONS)
    a.set_defaults(func=cmd_audit)

    g = sub.add_parser("glue", help="glue patches REGION=EXPR over --domain")
    common(g)
    g.add_argument("patches", nargs="*")
    g.set_defaults(func=cmd_glue)

    e = sub.add_parser("extend", help="build and verify the extension of a space")
    common(e)
    e.set_defaults(func=cmd_extend)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ExtensionRefused, Incoherent) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, ParseError, DomainError, UsageError, RegionMismatch, ResourceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
