"""Quantum walk optimisation over efficiently indexed combinatorial domains."""

from .circulant import (
    CirculantGraph,
    adjacency_row,
    circulant_graph,
    complete_graph,
    cycle_graph,
    eigenvalues,
    mobius_ladder,
)
from .combinadics import (
    BoundedCombinationCodec,
    CombinationCodec,
    DomainCodec,
    DyckCodec,
    PermutationCodec,
    SubsetCodec,
    WordCodec,
    domain_size,
    make_codec,
)
from .engine import (
    apply_phase,
    basis_state,
    ctqw,
    dft,
    embed_object_space,
    expectation,
    idft,
    probabilities,
    uniform_state,
)
from .grover import SearchSpec, grover_iteration, grover_search, optimal_iterations
from .qwoa import QwoaParams, evolve, objective, optimize, optimize_nested, report

__version__ = "0.1.0"
