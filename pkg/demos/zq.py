# %% [markdown]
# # The rationals from the integers
#
# The integers carry the partial divisions `f_n(m) = m/n`, defined on `nℤ`.
# Extending this S-group adjoins a class `[f_n, m]` for every pair, and
# the classes behave exactly like the fractions `m/n`.

# %%
from fractions import Fraction

from sgroups.extension import ExtSGroup, verify_closed, verify_strict
from sgroups.models import int_class_value, make_int_sgroup

e = ExtSGroup(make_int_sgroup())

# %% [markdown]
# Two spellings of one half are the same class, and addition finds a common
# denominator through the labels.

# %%
half = e.pair(2, 1)
print(half == e.pair(4, 2), half == e.pair(3, 1))
s = e.pair(2, 1) + e.pair(3, 1)
print(e.render(s), int_class_value(s) == Fraction(5, 6))

# %% [markdown]
# Prolonging `f_2` divides by two everywhere, and an odd integer never
# lands back in the integers.

# %%
print(e.render(e.prolong(2, e.embed(3))))
print(any(e.prolong(2, e.embed(3)) == e.embed(h) for h in range(-50, 51)))

# %% [markdown]
# The sampled audits agree.

# %%
print(verify_strict(e, 300, seed=1))
print(verify_closed(e, 300, seed=1))

# %% [markdown]
# Exhaustive comparison over the box `n <= 12`, `|m| <= 24`.

# %%
from sgroups.cli.demos import zq_enumeration

r = zq_enumeration()
print({k: r[k] for k in ("classes", "values", "well_defined", "injective", "surjective", "additive")})
