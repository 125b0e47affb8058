# %% [markdown]
# # QWOA on a five-city tour problem
#
# 120 tours, a complete-graph mixer and nested optimisation from p=1 to 3.

# %%
import numpy as np

from combwalk.circulant import complete_graph
from combwalk.problems import quality_vector, random_tsp
from combwalk.qwoa import optimal_mask, optimize_nested, report

inst = random_tsp(5, seed=2)
codec = inst.codec()
q = quality_vector(codec, inst.quality)
print("mean quality", q.mean(), "best", q.max())

# %%
runs = optimize_nested(3, q, complete_graph(codec.size), budget=600, seed=2)
for run in runs:
    p_opt = run.distribution[optimal_mask(q)].sum()
    print(f"p={run.p}  <q>={run.best_expectation:.4f}  P(optimal)={p_opt:.3f}")

# %% [markdown]
# Ten tours share the optimum (rotations and reversals), so the uniform
# state already puts 10/120 on them.

# %%
rep = report(runs[-1], codec, q, top=5)
for row in rep["rows"]:
    print(row.index, row.object, f"{row.probability:.4f}", f"{row.quality:.4f}")
