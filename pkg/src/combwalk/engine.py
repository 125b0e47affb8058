"""Statevector simulation in index space.

States are 1-D complex numpy arrays of length ``M`` (any ``M``, not only
powers of two).  Position ``r`` holds the amplitude of the object with rank
``r``, so indexing and un-indexing never have to be applied to the vector
itself; :func:`embed_object_space` checks that reduction at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circulant import CirculantGraph, adjacency_matrix
from .errors import CapacityError, DimensionError, ParameterError, ValidationError
from .fourier import dft, idft

__all__ = [
    "uniform_state",
    "basis_state",
    "dft",
    "idft",
    "apply_phase",
    "ctqw",
    "probabilities",
    "expectation",
    "EmbeddingReport",
    "embed_object_space",
]

MAX_EMBED_QUBITS = 12


def uniform_state(M: int) -> np.ndarray:
    if M < 1:
        raise ParameterError("state dimension must be >= 1")
    return np.full(M, 1 / np.sqrt(M), dtype=complex)


def basis_state(M: int, index: int) -> np.ndarray:
    if M < 1:
        raise ParameterError("state dimension must be >= 1")
    if not 0 <= index < M:
        raise DimensionError(f"basis index {index} outside [0, {M})")
    psi = np.zeros(M, dtype=complex)
    psi[index] = 1.0
    return psi


def _check_dim(state: np.ndarray, M: int, what: str) -> None:
    if state.shape[-1] != M:
        raise DimensionError(f"state has dimension {state.shape[-1]} but {what} has {M}")


def apply_phase(state, values, angle: float, sign: int = 1) -> np.ndarray:
    """Multiply amplitude ``x`` by ``exp(i * sign * angle * values[x])``."""
    state = np.asarray(state, dtype=complex)
    values = np.asarray(values, dtype=float)
    _check_dim(state, values.shape[-1], "phase vector")
    if angle == 0:
        return state.copy()
    return state * np.exp(1j * sign * angle * values)


def ctqw(state, graph: CirculantGraph, t: float, sign: int = -1) -> np.ndarray:
    """Continuous-time walk ``exp(sign * i * t * C)`` on a circulant graph.

    Computed as DFT . diag(exp(sign*i*t*lambda)) . inverse DFT, so the cost
    does not depend on ``t``.  The default ``sign=-1`` is the propagator
    ``exp(-itA)``.
    """
    state = np.asarray(state, dtype=complex)
    _check_dim(state, graph.M, "graph")
    if t == 0:
        return state.copy()
    spectral = idft(state)
    spectral *= np.exp(1j * sign * t * graph.spectrum)
    return dft(spectral)


def probabilities(state) -> np.ndarray:
    state = np.asarray(state)
    return state.real**2 + state.imag**2


def expectation(state, qualities) -> float:
    qualities = np.asarray(qualities, dtype=float)
    _check_dim(np.asarray(state), qualities.shape[-1], "quality vector")
    return float(probabilities(state) @ qualities)


@dataclass
class EmbeddingReport:
    """Outcome of checking the object-space walk against the index-space walk.

    ``slots[x]`` is where basis string ``x`` lands under the indexing
    permutation: valid objects go to their rank, invalid strings fill
    ``M..2^n-1`` in ascending order.
    """

    M: int
    num_qubits: int
    slots: np.ndarray
    object_adjacency: np.ndarray
    indexed_adjacency: np.ndarray
    block_error: float
    coupling_error: float
    walk_error: float
    invalid_drift: float
    tol: float

    @property
    def ok(self) -> bool:
        return (
            self.block_error == 0
            and self.coupling_error == 0
            and self.walk_error <= self.tol
            and self.invalid_drift <= self.tol
        )

    @property
    def permutation_matrix(self) -> np.ndarray:
        N = 1 << self.num_qubits
        P = np.zeros((N, N))
        P[self.slots, np.arange(N)] = 1
        return P


def _dense_walk(A: np.ndarray, t: float, sign: int) -> np.ndarray:
    w, V = np.linalg.eigh(A.astype(float))
    return (V * np.exp(1j * sign * t * w)) @ V.conj().T


def embed_object_space(
    codec,
    graph: CirculantGraph,
    num_qubits: int,
    t: float = 1.0,
    encode=None,
    sign: int = -1,
    seed: int = 0,
    tol: float = 1e-10,
) -> EmbeddingReport:
    """Materialise the indexing permutation on ``num_qubits`` and compare walks.

    ``encode`` maps an object to its computational basis integer; it
    defaults to the codec's own bit encoding.  The object-space adjacency
    joins valid strings ``x, y`` when their ranks are adjacent in ``graph``.
    Conjugating it by the indexing permutation must give the circulant as
    the leading ``M x M`` block and nothing else, and the dense object-space
    walk must agree with :func:`ctqw` run on the indexed valid block.
    """
    M = codec.size
    if graph.M != M:
        raise DimensionError(f"graph has {graph.M} vertices, domain has {M}")
    if num_qubits > MAX_EMBED_QUBITS:
        raise CapacityError(f"refusing to materialise {num_qubits} > {MAX_EMBED_QUBITS} qubits")
    N = 1 << num_qubits
    if N < M:
        raise CapacityError(f"2^{num_qubits} = {N} basis states cannot hold M = {M} objects")
    if encode is None:
        encode = codec.basis_index

    basis_of_rank = np.empty(M, dtype=np.int64)
    for r in range(M):
        x = int(encode(codec.unrank(r)))
        if not 0 <= x < N:
            raise ValidationError(f"encoding {x} of rank {r} does not fit in {num_qubits} qubits")
        basis_of_rank[r] = x
    if len(np.unique(basis_of_rank)) != M:
        raise ValidationError("object encoding is not injective")

    slots = np.full(N, -1, dtype=np.int64)
    slots[basis_of_rank] = np.arange(M)
    invalid = np.flatnonzero(slots < 0)
    slots[invalid] = M + np.arange(len(invalid))

    C = adjacency_matrix(graph)
    A_obj = np.zeros((N, N), dtype=np.int64)
    A_obj[np.ix_(basis_of_rank, basis_of_rank)] = C

    # P A P^T with P|x> = |slots[x]>
    indexed = np.zeros_like(A_obj)
    indexed[np.ix_(slots, slots)] = A_obj

    block_error = float(np.max(np.abs(indexed[:M, :M] - C)))
    coupling_error = float(
        max(np.max(np.abs(indexed[M:, :]), initial=0), np.max(np.abs(indexed[:, M:]), initial=0))
    )

    rng = np.random.default_rng(seed)
    psi = rng.normal(size=N) + 1j * rng.normal(size=N)
    psi /= np.linalg.norm(psi)

    full = _dense_walk(A_obj, t, sign) @ psi

    indexed_state = np.empty(N, dtype=complex)
    indexed_state[slots] = psi
    indexed_state[:M] = ctqw(indexed_state[:M], graph, t, sign=sign)
    embedded = indexed_state[slots]

    walk_error = float(np.max(np.abs(full - embedded)))
    invalid_basis = np.flatnonzero(slots >= M)
    invalid_drift = float(np.max(np.abs(full[invalid_basis] - psi[invalid_basis]), initial=0))

    return EmbeddingReport(
        M=M,
        num_qubits=num_qubits,
        slots=slots,
        object_adjacency=A_obj,
        indexed_adjacency=indexed,
        block_error=block_error,
        coupling_error=coupling_error,
        walk_error=walk_error,
        invalid_drift=invalid_drift,
        tol=tol,
    )
