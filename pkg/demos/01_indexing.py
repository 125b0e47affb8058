# %% [markdown]
# # Indexing combinatorial objects
#
# Every family gets a bijection onto 0..M-1. The quantum routines only
# ever see those integers.

# %%
from combwalk import make_codec

comb = make_codec("combinations", n=6, k=3)
print(comb, "M =", comb.size)
for r in range(5):
    print(r, comb.format(comb.unrank(r)))

# %% [markdown]
# Colex order: the rank of {c1 < c2 < c3} is C(c1,1) + C(c2,2) + C(c3,3).

# %%
print(comb.rank((1, 3, 5)), 1 + 3 + 10)

# %% [markdown]
# Subsets up to size K are listed by size, so the empty set is 0 and
# all singletons come next.

# %%
bounded = make_codec("bounded-combinations", n=4, K=2)
print([bounded.format(bounded.unrank(r)) for r in range(bounded.size)])

# %%
for method in ("lehmer", "mr"):
    perm = make_codec("permutations", n=3, method=method)
    print(method, [perm.unrank(r) for r in range(perm.size)])

# %%
dyck = make_codec("dyck", n=3)
print([dyck.unrank(r) for r in range(dyck.size)])
