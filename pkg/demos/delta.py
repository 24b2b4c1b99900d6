# %% [markdown]
# # Derivatives past the last one
#
# On continuous piecewise polynomials the derivative `d^n` is only defined
# on functions smooth enough for it. The extension supplies the missing
# derivatives as classes `[d^n, f]`.

# %%
from sgroups.models import ModelDescriptor, pp_abs, pp_poly, pp_x
from sgroups.regions import Interval
from sgroups.spaces import five_region_sspace
from sgroups.tess import build_tilde

J = Interval(0, 3)
space = five_region_sspace(ModelDescriptor("pp", max_order=2, max_degree=2, max_breaks=2))
t = build_tilde(space, samples=10)
e = t.ext[J]

# %% [markdown]
# `|x - 1|` has a kink at 1. One derivative gives a step, which is not a
# continuous function, and a second gives the class playing the role of
# `2δ₁`.

# %%
f = pp_abs(J, 1)
d1 = e.prolong(1, e.embed(f))
d2 = e.prolong(2, e.embed(f))
for x in (d1, d2):
    print(e.render(x), "embedded:", e.is_embedded(x))

# %% [markdown]
# Away from the kink these classes are ordinary: restricted to `(1,2)` the
# step is the constant 1 and the delta vanishes.

# %%
M = Interval(1, 2)
print(t.ext[M].render(t.restrict(M, J, d1)), t.restrict(M, J, d1) == t.ext[M].embed(pp_poly(M, (1,))))
print(t.restrict(M, J, d2) == t.ext[M].zero)

# %% [markdown]
# Smooth functions are unaffected: the class of `d^1 x^2` is the embedded
# function `2x`.

# %%
g = pp_x(J) * pp_x(J)
print(e.prolong(1, e.embed(g)) == e.embed(2 * pp_x(J)))
