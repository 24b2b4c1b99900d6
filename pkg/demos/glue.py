# %% [markdown]
# # Gluing a singular object
#
# A second derivative of a kink near 1 on `(0,2)` and zero on `(1,3)` agree
# on the overlap `(1,2)`, so they patch together into one class on `(0,3)`.

# %%
from sgroups.models import ModelDescriptor, pp_abs, pp_poly, pp_x
from sgroups.regions import Interval
from sgroups.spaces import Cover, Incoherent, five_region_sspace
from sgroups.tess import bar_glue, bar_restrict, build_bar, build_tilde, verify_2tess

I, L, R, M = Interval(0, 3), Interval(0, 2), Interval(1, 3), Interval(1, 2)
t = build_tilde(five_region_sspace(ModelDescriptor("pp", max_order=2, max_degree=2, max_breaks=2)), samples=10)
bs = build_bar(t)

a = bs.embed(L, t.ext[L].pair(2, pp_abs(L, 1)))
z = bs.zero(R)
print(bar_restrict(a, M) == bar_restrict(z, M))

# %%
g = bar_glue(bs, Cover(I, (L, R)), [a, z])
print(bs.render(g))
print(g == bs.embed(I, t.ext[I].pair(2, pp_abs(I, 1))))

# %% [markdown]
# Patches that disagree are refused with the offending pair.

# %%
try:
    bar_glue(bs, Cover(I, (L, R)), [bs.embed_base(L, pp_x(L)), bs.embed_base(R, pp_poly(R, (1, 1)))])
except Incoherent as exc:
    print("refused:", *map(str, exc.pair))

# %% [markdown]
# In this finite setting every sampled bar element already comes from the
# first extension; the audit reports that as a statistic.

# %%
rep = verify_2tess(bs, 20, seed=3)
print(rep.passed, rep.stats)
