# %% [markdown]
# # Amplitude amplification over an indexed domain

# %%
import numpy as np

from combwalk import CombinationCodec
from combwalk.grover import SearchSpec, grover_search, success_probability

codec = CombinationCodec(15, 5)
spec = SearchSpec(codec, lambda c: c[:4] == (0, 1, 2, 3) and c[4] <= 8)
print("M", spec.M, "marked", spec.k)

# %%
res = grover_search(spec, seed=0)
print("iterations", res.iterations, "predicted", res.predicted_success)
for j in (0, 5, 10, res.iterations):
    print(j, res.trajectory[j], success_probability(spec.M, spec.k, j))
print("sampled", codec.format(res.sample), "marked:", res.sample_marked)
