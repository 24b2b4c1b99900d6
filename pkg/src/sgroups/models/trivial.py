"""Finite cyclic groups acted on by automorphisms, and the one-point group."""

from __future__ import annotations

from sgroups.algebra import GroupModel, HomOracle, LabelMonoid, SGroup, UsageError

__all__ = ["make_trivial_sgroup", "make_zero_sgroup", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def make_trivial_sgroup(n: int) -> SGroup:
    """``ℤ/n`` with ``H`` the multiplications by units ``k``; every member is total."""
    if not isinstance(n, int) or not is_prime(n):
        raise UsageError(f"trivial model needs a prime modulus, got {n!r}")
    group = GroupModel(
        eq=lambda a, b: a % n == b % n,
        zero=0,
        add=lambda a, b: (a + b) % n,
        neg=lambda a: (-a) % n,
        sample=lambda rng: rng.randrange(n),
        render=str,
    )
    monoid = LabelMonoid(
        name=f"units mod {n}",
        compose=lambda a, b: (a * b) % n,
        identity=1,
        sample=lambda rng: rng.randrange(1, n),
        render=lambda k: "I_G" if k == 1 else f"m_{k}",
        contains=lambda k: isinstance(k, int) and 0 < k < n,
    )

    def oracle(k):
        inv = pow(k, -1, n)
        return HomOracle(
            in_domain=lambda a: True,
            apply=lambda a: (k * a) % n,
            preimage=lambda a: (inv * a) % n,
            in_kernel=lambda a: a % n == 0,
            kernel_sample=lambda rng: 0,
        )

    hooks = {
        "encode": lambda a: a,
        "decode": lambda a: int(a) % n,
        "encode_ext": lambda k, a: {"k": k, "m": a},
        "decode_ext": lambda obj: (int(obj["k"]), int(obj["m"]) % n),
        "reduce": lambda k, a: (1, (k * a) % n),
        "labels": lambda cap: range(1, n),
    }
    return SGroup(f"Z/{n}", group, monoid, oracle, model="trivial", hooks=hooks)


def make_zero_sgroup(monoid: LabelMonoid, key: str) -> SGroup:
    """The one-element group, every label of ``monoid`` acting as the only map."""
    group = GroupModel(
        eq=lambda a, b: True,
        zero=0,
        add=lambda a, b: 0,
        neg=lambda a: 0,
        sample=lambda rng: 0,
        render=lambda a: "0",
    )
    total = HomOracle(
        in_domain=lambda a: True,
        apply=lambda a: 0,
        preimage=lambda a: 0,
        in_kernel=lambda a: True,
        kernel_sample=lambda rng: 0,
    )
    hooks = {
        "encode": lambda a: 0,
        "decode": lambda a: 0,
        "encode_ext": lambda label, a: {"label": label, "elem": 0},
        "decode_ext": lambda obj: (obj["label"], 0),
        "reduce": lambda label, a: (monoid.identity, 0),
    }
    return SGroup(key, group, monoid, lambda label: total, model="zero", hooks=hooks)
