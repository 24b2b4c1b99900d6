# %% [markdown]
# # Checking the axiom systems
#
# Each construction is presented as a candidate structure and checked
# against the full and the simplified axiom lists. Mutated candidates
# show which axiom catches which defect.

# %%
from sgroups.axiomatics import (
    MUTATIONS, candidate_from_bar, candidate_from_ext, check_full, check_simplified, check_system, mutate,
)
from sgroups.extension import ExtSGroup
from sgroups.models import ModelDescriptor, make_int_sgroup
from sgroups.spaces import five_region_sspace
from sgroups.tess import build_bar, build_tilde

q = candidate_from_ext(ExtSGroup(make_int_sgroup()))
print(check_full(q, "2.20", 100, seed=0))
print(check_simplified(q, "2.25", 100, seed=0))

# %% [markdown]
# Breaking strictness: `f̃_2` of an odd integer is sent back into the
# integers.

# %%
rep = check_system(mutate(q, "strictness"), "2.20", 100, seed=0)
print(rep.failing())

# %% [markdown]
# The bar space over five regions, with every mutation kind.

# %%
caps = ModelDescriptor("pp", max_order=2, max_degree=2, max_breaks=2)
bar = candidate_from_bar(build_bar(build_tilde(five_region_sspace(caps), samples=10)))
print(check_full(bar, "5.21", 15, seed=0).passed)
for kind in MUTATIONS:
    full = check_system(mutate(bar, kind), "5.21", 15, seed=0)
    simple = check_system(mutate(bar, kind), "5.28", 15, seed=0)
    print(f"{kind:<24} {full.failing()[:2]}  {simple.failing()[:2]}")
