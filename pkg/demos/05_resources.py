# %% [markdown]
# # Gate estimates for the indexing circuits
#
# Leading terms only. The list encoding of a k-combination needs
# k*ceil(log2 n) qubits against n for the bitstring.

# %%
from combwalk.resources import compare_representations, resource_table

for row in resource_table(16, 4):
    print(row)

# %%
for n, k in ((64, 2), (64, 32), (1024, 2), (1024, 1024)):
    r = compare_representations(n, k)
    print(n, k, r["recommended"], r["list_gates"], r["bitstring_gates"])
