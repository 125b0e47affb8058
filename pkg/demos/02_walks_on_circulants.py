# %% [markdown]
# # Quantum walks on circulant graphs
#
# A circulant adjacency is diagonal in the Fourier basis, so a walk costs
# two FFTs and a pointwise phase.

# %%
import numpy as np

from combwalk import engine
from combwalk.circulant import cycle_graph, eigenvalues, eigenvalues_dft, mobius_ladder

g = mobius_ladder(6)
print(eigenvalues(g))
print(np.round(eigenvalues_dft(g), 12))

# %% [markdown]
# Spread of a walker started at vertex 0 of a 41-cycle.

# %%
g = cycle_graph(41)
psi0 = engine.basis_state(41, 0)
for t in (0.0, 2.0, 5.0, 10.0):
    p = engine.probabilities(engine.ctqw(psi0, g, t))
    spread = np.sqrt(np.sum(p * np.minimum(np.arange(41), 41 - np.arange(41)) ** 2))
    print(f"t={t:4.1f}  rms distance {spread:6.3f}  norm {p.sum():.15f}")

# %% [markdown]
# The walk lives on indices, but it can be pulled back to bitstrings.
# Here the objects are subsets of {0,1,2,3} with any size except two.

# %%
from combwalk import SubsetCodec
from combwalk.engine import embed_object_space

rep = embed_object_space(SubsetCodec(4, [0, 1, 3, 4]), mobius_ladder(10), 4, t=0.9)
print("block error", rep.block_error, "coupling error", rep.coupling_error, "walk error", rep.walk_error)
