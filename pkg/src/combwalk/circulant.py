"""Undirected circulant graphs and their spectra.

A circulant graph on ``M`` vertices joins ``a`` and ``b`` whenever
``(b - a) mod M`` or ``(a - b) mod M`` is a generator.  Its adjacency matrix
is diagonalised by the Fourier basis, and the eigenvalue belonging to
Fourier mode ``j`` is the DFT of the adjacency first row at ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .fourier import dft

GRAPH_FAMILIES = ("complete", "cycle", "mobius", "circulant")


@dataclass(frozen=True)
class CirculantGraph:
    M: int
    generators: tuple[int, ...]
    family: str = "circulant"
    _spectrum: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.M < 1:
            raise ParameterError(f"need M >= 1 vertices, got {self.M}")
        gens = tuple(sorted(set(int(g) for g in self.generators)))
        for g in gens:
            if not 1 <= g <= self.M // 2:
                raise ParameterError(
                    f"generator {g} outside [1, {self.M // 2}] for M={self.M}"
                )
        object.__setattr__(self, "generators", gens)
        if self.family not in GRAPH_FAMILIES:
            raise ParameterError(f"unknown graph family {self.family!r}")

    @property
    def offsets(self) -> tuple[int, ...]:
        """Distinct nonzero offsets ``g`` and ``M - g`` of the first row."""
        out = set()
        for g in self.generators:
            out.add(g % self.M)
            out.add((self.M - g) % self.M)
        return tuple(sorted(out))

    @property
    def degree(self) -> int:
        return len(self.offsets)

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            lam = eigenvalues(self)
            lam.flags.writeable = False
            object.__setattr__(self, "_spectrum", lam)
        return self._spectrum

    def to_dict(self) -> dict:
        if self.family == "circulant":
            return {"family": self.family, "M": self.M, "generators": list(self.generators)}
        return {"family": self.family, "M": self.M}


def circulant_graph(M: int, generators) -> CirculantGraph:
    return CirculantGraph(M, tuple(generators))


def complete_graph(M: int) -> CirculantGraph:
    if M < 2:
        raise ParameterError("complete graph needs M >= 2")
    return CirculantGraph(M, tuple(range(1, M // 2 + 1)), "complete")


def cycle_graph(M: int) -> CirculantGraph:
    if M < 2:
        raise ParameterError("cycle graph needs M >= 2")
    return CirculantGraph(M, (1,), "cycle")


def mobius_ladder(M: int) -> CirculantGraph:
    if M < 4 or M % 2:
        raise ParameterError(f"Mobius ladder needs even M >= 4, got {M}")
    return CirculantGraph(M, (1, M // 2), "mobius")


def make_graph(family: str, M: int, generators=None) -> CirculantGraph:
    if family == "complete":
        return complete_graph(M)
    if family == "cycle":
        return cycle_graph(M)
    if family in ("mobius", "mobius-ladder"):
        return mobius_ladder(M)
    if family == "circulant":
        if generators is None:
            raise ParameterError("a general circulant needs a generator list")
        return circulant_graph(M, generators)
    raise ParameterError(f"unknown graph family {family!r}")


def adjacency_row(g: CirculantGraph) -> np.ndarray:
    row = np.zeros(g.M, dtype=np.int64)
    row[list(g.offsets)] = 1
    return row


def adjacency_matrix(g: CirculantGraph) -> np.ndarray:
    """Dense adjacency; ``A[a, b] = row[(b - a) mod M]``."""
    row = adjacency_row(g)
    idx = (np.arange(g.M)[None, :] - np.arange(g.M)[:, None]) % g.M
    return row[idx]


def eigenvalues_dft(g: CirculantGraph) -> np.ndarray:
    """Spectrum from the DFT of the adjacency first row, in Fourier order."""
    row = adjacency_row(g).astype(float)
    # centre first: dense rows (complete graph) otherwise lose ~M*eps in every bin
    c = row.mean()
    lam = (dft((row - c).astype(complex)) * np.sqrt(g.M)).real
    lam[0] += c * g.M
    return lam


def eigenvalues(g: CirculantGraph) -> np.ndarray:
    """Spectrum in Fourier order, closed form where one exists."""
    M = g.M
    j = np.arange(M)
    if g.family == "complete":
        lam = -np.ones(M)
        lam[0] = M - 1
        return lam
    if g.family == "cycle" and M >= 3:
        return 2 * np.cos(2 * np.pi * j / M)
    if g.family == "mobius":
        return 2 * np.cos(2 * np.pi * j / M) + np.where(j % 2, -1.0, 1.0)
    # a 2-cycle is a single edge, not covered by 2cos(2 pi j / M)
    return eigenvalues_dft(g)
